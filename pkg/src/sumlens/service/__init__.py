from .app import ServiceState, UnknownSummary, create_app, export_csv, search_report
from .queue import (
    DEFAULT_LEASE_SECONDS,
    AnnotationTask,
    LeaseExpired,
    TaskQueue,
    dump_tasks,
    load_tasks,
)
from .tasks import build_tasks, task_key_for

__all__ = [
    "ServiceState",
    "UnknownSummary",
    "create_app",
    "export_csv",
    "search_report",
    "DEFAULT_LEASE_SECONDS",
    "AnnotationTask",
    "LeaseExpired",
    "TaskQueue",
    "dump_tasks",
    "load_tasks",
    "build_tasks",
    "task_key_for",
]
