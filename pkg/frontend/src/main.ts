/** App shell: fetch a task, hold one local draft, submit, repeat.
 *
 * The service is the source of truth; the only client state is the current
 * lease and the uncommitted draft, so a refresh can never lose committed
 * work. Keys 1-5 pick labels. A stale-revision response surfaces as a
 * visible conflict prompt instead of a silent retry.
 */

import { AnnotationApi, ApiError } from "./api.js";
import { canSubmit, resetDraft, setComment, setEvidence, setLabel } from "./state.js";
import {
  renderBanner,
  renderDashboard,
  renderReviewPanel,
  renderSearchPanel,
} from "./render.js";
import { Draft, LABEL_ORDER, LabelInfo, SearchResult, Task } from "./types.js";

class AnnotationApp {
  private api: AnnotationApi;
  private task: Task | null = null;
  private draft: Draft = resetDraft();
  private labels: LabelInfo[] = [];
  private searchOpen = false;
  private searchResults: SearchResult[] | null = null;
  private banner: { message: string; kind: "offline" | "conflict" | "done" } | null = null;

  constructor(private root: HTMLElement, api?: AnnotationApi) {
    const stored = sessionStorage.getItem("annotation-session");
    this.api = api ?? new AnnotationApi("", stored ?? undefined);
    sessionStorage.setItem("annotation-session", this.api.sessionId);
    document.addEventListener("keydown", (event) => this.onKey(event));
  }

  async start(): Promise<void> {
    try {
      this.labels = (await this.api.labels()).labels;
      await this.loadNext();
    } catch (err) {
      this.banner = { message: "Service unreachable; retry when it is back.", kind: "offline" };
      await this.render();
    }
  }

  private async loadNext(): Promise<void> {
    this.draft = resetDraft();
    this.searchOpen = false;
    this.searchResults = null;
    const next = await this.api.nextTask();
    this.task = next.task;
    if (next.exhausted) {
      this.banner = { message: "Queue exhausted: every task is annotated.", kind: "done" };
    } else {
      this.banner = null;
      // Zero candidates routes straight to the full-report search.
      if (this.task && this.task.candidates.length === 0) {
        this.searchOpen = true;
      }
    }
    await this.render();
  }

  private onKey(event: KeyboardEvent): void {
    if (!this.task) return;
    if ((event.target as HTMLElement | null)?.tagName === "TEXTAREA") return;
    if ((event.target as HTMLElement | null)?.tagName === "INPUT") return;
    const index = Number.parseInt(event.key, 10) - 1;
    const label = LABEL_ORDER[index];
    if (label !== undefined) {
      this.draft = setLabel(this.draft, label);
      void this.render();
    }
  }

  private async submit(): Promise<void> {
    if (!this.task || !canSubmit(this.draft) || this.draft.label === null) return;
    try {
      await this.api.submit(this.task.task_id, {
        label: this.draft.label,
        evidence_quote: this.draft.evidenceQuote,
        comment: this.draft.comment,
        revision: this.task.revision + 1,
      });
      await this.loadNext();
    } catch (err) {
      if (err instanceof ApiError && err.kind === "stale_revision") {
        this.banner = {
          message: "Conflict: another session annotated this task first. Reloading.",
          kind: "conflict",
        };
        await this.render();
        await this.loadNext();
      } else if (err instanceof ApiError && err.kind === "lease_expired") {
        this.banner = { message: "Your lease expired; fetching a fresh task.", kind: "conflict" };
        await this.render();
        await this.loadNext();
      } else {
        this.banner = { message: "Submit failed: " + String(err), kind: "offline" };
        await this.render();
      }
    }
  }

  private async runSearch(query: string): Promise<void> {
    if (!this.task) return;
    const res = await this.api.search(this.task.summary_id, query);
    this.searchResults = res.results;
    await this.render();
  }

  private async render(): Promise<void> {
    this.root.replaceChildren();
    if (this.banner) {
      this.root.append(renderBanner(this.banner.message, this.banner.kind));
    }
    if (this.task) {
      this.root.append(
        renderReviewPanel(this.task, this.draft, this.labels, {
          onSelectLabel: (label) => {
            this.draft = setLabel(this.draft, label);
            void this.render();
          },
          onSelectEvidence: (quote) => {
            this.draft = setEvidence(this.draft, quote);
            void this.render();
          },
          onComment: (text) => {
            this.draft = setComment(this.draft, text);
            const submit = this.root.querySelector<HTMLButtonElement>("button.submit");
            if (submit) submit.disabled = !canSubmit(this.draft);
          },
          onSubmit: () => void this.submit(),
          onOpenSearch: () => {
            this.searchOpen = true;
            void this.render();
          },
        }),
      );
      if (this.searchOpen) {
        this.root.append(
          renderSearchPanel(
            this.searchResults,
            (quote) => {
              this.draft = setEvidence(this.draft, quote);
              this.searchOpen = false;
              void this.render();
            },
            (query) => void this.runSearch(query),
          ),
        );
      }
    }
    try {
      const progress = await this.api.progress();
      this.root.append(renderDashboard(progress, this.api.exportUrl()));
    } catch {
      this.root.append(renderBanner("Progress unavailable (offline?)", "offline"));
    }
  }
}

export function mount(root: HTMLElement, api?: AnnotationApi): AnnotationApp {
  const app = new AnnotationApp(root, api);
  void app.start();
  return app;
}

const rootElement = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootElement) {
  mount(rootElement);
}
