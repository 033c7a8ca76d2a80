/** Wire types for the annotation service endpoints. */

export type MatchKind = "exact" | "format_variant";

export interface CandidateQuote {
  location: string;
  quote_text: string;
  match_kind: MatchKind;
  matched_value: string;
}

export interface Task {
  task_id: number;
  task_key: string;
  summary_id: string;
  filing_id: string;
  value: string;
  value_span: [number, number];
  summary_sentence_text: string;
  candidates: CandidateQuote[];
  model: string;
  prompt_kind: string;
  done: boolean;
  revision: number;
}

export interface NextTaskResponse {
  exhausted: boolean;
  task: Task | null;
}

export interface SearchResult {
  location: string;
  quote: string;
  via: "substring" | "numeric";
}

export interface Progress {
  counts: { open: number; done: number; total: number };
  labels: Record<string, number>;
  hallucinated: number;
}

export interface LabelInfo {
  value: string;
  definition: string;
}

export const NO_HALLUCINATION = "no_hallucination";

export const HALLUCINATION_LABELS = [
  "fabricated_number",
  "rounding_error",
  "arithmetic_error",
  "context_mismatch",
] as const;

/** Order drives the 1-5 keyboard shortcuts. */
export const LABEL_ORDER: string[] = [NO_HALLUCINATION, ...HALLUCINATION_LABELS];

export interface Draft {
  label: string | null;
  evidenceQuote: string | null;
  comment: string;
  dirty: boolean;
}

export const EMPTY_DRAFT: Draft = {
  label: null,
  evidenceQuote: null,
  comment: "",
  dirty: false,
};
