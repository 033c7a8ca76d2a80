/** DOM builders for the three panels. Pure functions of their inputs plus a
 * handler bag, so the tests can render and assert without the app shell. */

import { submitBlocker } from "./state.js";
import {
  CandidateQuote,
  Draft,
  LABEL_ORDER,
  LabelInfo,
  MatchKind,
  Progress,
  SearchResult,
  Task,
} from "./types.js";

export interface ReviewHandlers {
  onSelectLabel: (label: string) => void;
  onSelectEvidence: (quote: string) => void;
  onComment: (text: string) => void;
  onSubmit: () => void;
  onOpenSearch: () => void;
}

export function matchKindBadge(kind: MatchKind): HTMLSpanElement {
  const badge = document.createElement("span");
  badge.className = `badge badge-${kind}`;
  badge.textContent = kind === "exact" ? "exact" : "format variant";
  return badge;
}

export function searchResultBadge(via: SearchResult["via"]): HTMLSpanElement {
  const badge = document.createElement("span");
  badge.className = `badge badge-${via === "numeric" ? "format_variant" : "substring"}`;
  badge.textContent = via === "numeric" ? "format variant" : "text match";
  return badge;
}

const NUMBER_RUN = /\d[\d,]*(?:\.\d+)?/g;

/** Surface span of the canonical value within the sentence, or null. The
 * canonical form has separators stripped ("1000000"), the surface form may
 * not ("1,000,000"). */
export function findValueSpan(sentence: string, value: string): [number, number] | null {
  const direct = sentence.indexOf(value);
  if (direct >= 0) return [direct, direct + value.length];
  for (const m of sentence.matchAll(NUMBER_RUN)) {
    if (m[0].replaceAll(",", "") === value && m.index !== undefined) {
      return [m.index, m.index + m[0].length];
    }
  }
  return null;
}

export function highlightValue(sentence: string, value: string): HTMLElement {
  const host = document.createElement("p");
  host.className = "summary-sentence";
  const span = findValueSpan(sentence, value);
  if (span === null) {
    host.textContent = sentence;
    return host;
  }
  host.append(
    document.createTextNode(sentence.slice(0, span[0])),
    mark(sentence.slice(span[0], span[1])),
    document.createTextNode(sentence.slice(span[1])),
  );
  return host;
}

function mark(text: string): HTMLElement {
  const el = document.createElement("mark");
  el.className = "value-highlight";
  el.textContent = text;
  return el;
}

function candidateCard(
  candidate: CandidateQuote,
  selected: boolean,
  onSelect: (quote: string) => void,
): HTMLElement {
  const card = document.createElement("div");
  card.className = "candidate-card" + (selected ? " selected" : "");
  card.dataset.location = candidate.location;
  card.append(matchKindBadge(candidate.match_kind));
  const quote = document.createElement("blockquote");
  quote.textContent = candidate.quote_text;
  card.append(quote);
  const pick = document.createElement("button");
  pick.className = "pick-evidence";
  pick.textContent = selected ? "evidence ✓" : "use as evidence";
  pick.addEventListener("click", () => onSelect(candidate.quote_text));
  card.append(pick);
  return card;
}

export function renderReviewPanel(
  task: Task,
  draft: Draft,
  labels: LabelInfo[],
  handlers: ReviewHandlers,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "review-panel";
  panel.dataset.taskId = String(task.task_id);

  const heading = document.createElement("h2");
  heading.textContent = `Value ${task.value} — ${task.summary_id}`;
  panel.append(heading);
  panel.append(highlightValue(task.summary_sentence_text, task.value));

  const candidates = document.createElement("div");
  candidates.className = "candidates";
  if (task.candidates.length === 0) {
    const empty = document.createElement("p");
    empty.className = "no-candidates";
    empty.textContent = "No matching quotes were extracted; search the full report.";
    candidates.append(empty);
  } else {
    for (const c of task.candidates) {
      candidates.append(candidateCard(c, draft.evidenceQuote === c.quote_text, handlers.onSelectEvidence));
    }
  }
  panel.append(candidates);

  const labelRow = document.createElement("div");
  labelRow.className = "labels";
  LABEL_ORDER.forEach((value, i) => {
    const info = labels.find((l) => l.value === value);
    const button = document.createElement("button");
    button.className = "label-button" + (draft.label === value ? " selected" : "");
    button.dataset.label = value;
    button.title = info ? info.definition : "";
    button.textContent = `${i + 1}. ${value.replaceAll("_", " ")}`;
    button.addEventListener("click", () => handlers.onSelectLabel(value));
    labelRow.append(button);
  });
  panel.append(labelRow);

  const comment = document.createElement("textarea");
  comment.className = "comment";
  comment.placeholder = "Why is this a hallucination? (required for hallucination labels)";
  comment.value = draft.comment;
  comment.addEventListener("input", () => handlers.onComment(comment.value));
  panel.append(comment);

  const searchButton = document.createElement("button");
  searchButton.className = "open-search";
  searchButton.textContent = "Search full report";
  searchButton.addEventListener("click", handlers.onOpenSearch);
  panel.append(searchButton);

  const blocker = submitBlocker(draft);
  const submit = document.createElement("button");
  submit.className = "submit";
  submit.textContent = "Submit";
  submit.disabled = blocker !== "";
  submit.title = blocker;
  submit.addEventListener("click", handlers.onSubmit);
  panel.append(submit);

  return panel;
}

export function renderSearchPanel(
  results: SearchResult[] | null,
  onPick: (quote: string) => void,
  onQuery: (query: string) => void,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "search-panel";
  const box = document.createElement("input");
  box.type = "search";
  box.placeholder = "Search the report (text or a number, e.g. 1M)";
  box.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") onQuery(box.value);
  });
  panel.append(box);

  const list = document.createElement("div");
  list.className = "search-results";
  if (results !== null) {
    if (results.length === 0) {
      const none = document.createElement("p");
      none.className = "no-evidence";
      none.textContent = "No evidence found in the report — consider a hallucination label.";
      list.append(none);
    }
    for (const r of results) {
      const row = document.createElement("div");
      row.className = "search-result";
      row.dataset.location = r.location;
      row.append(searchResultBadge(r.via));
      const quote = document.createElement("blockquote");
      quote.textContent = r.quote;
      row.append(quote);
      const pick = document.createElement("button");
      pick.textContent = "use as evidence";
      pick.addEventListener("click", () => onPick(r.quote));
      row.append(pick);
      list.append(row);
    }
  }
  panel.append(list);
  return panel;
}

export function renderDashboard(progress: Progress, exportUrl: string): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "dashboard";
  const counts = document.createElement("p");
  counts.className = "counts";
  counts.textContent =
    `${progress.counts.done} done / ${progress.counts.open} open ` +
    `(${progress.counts.total} total)`;
  panel.append(counts);

  const table = document.createElement("table");
  table.className = "tallies";
  for (const [label, count] of Object.entries(progress.labels)) {
    const row = table.insertRow();
    row.insertCell().textContent = label;
    row.insertCell().textContent = String(count);
  }
  panel.append(table);

  const link = document.createElement("a");
  link.href = exportUrl;
  link.className = "export-link";
  link.textContent = "Download CSV export";
  panel.append(link);
  return panel;
}

export function renderBanner(message: string, kind: "offline" | "conflict" | "done"): HTMLElement {
  const banner = document.createElement("div");
  banner.className = `banner banner-${kind}`;
  banner.textContent = message;
  return banner;
}
