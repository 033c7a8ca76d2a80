/** Draft state transitions and client-side protocol validation.
 *
 * The validation here mirrors the service's record invariants exactly, so a
 * submission the UI allows can never bounce off the schema check: a clean
 * verdict needs its evidence quote, a hallucination verdict needs a comment.
 */

import { Draft, EMPTY_DRAFT, HALLUCINATION_LABELS, NO_HALLUCINATION } from "./types.js";

export function setLabel(draft: Draft, label: string): Draft {
  return { ...draft, label, dirty: true };
}

export function setEvidence(draft: Draft, quote: string | null): Draft {
  return { ...draft, evidenceQuote: quote, dirty: true };
}

export function setComment(draft: Draft, comment: string): Draft {
  return { ...draft, comment, dirty: true };
}

export function resetDraft(): Draft {
  return { ...EMPTY_DRAFT };
}

export function isHallucinationLabel(label: string): boolean {
  return (HALLUCINATION_LABELS as readonly string[]).includes(label);
}

/** Empty string when submittable, otherwise the reason the button is off. */
export function submitBlocker(draft: Draft): string {
  if (!draft.label) {
    return "pick a label";
  }
  if (draft.label === NO_HALLUCINATION && !draft.evidenceQuote) {
    return "no-hallucination needs an evidence quote";
  }
  if (isHallucinationLabel(draft.label) && draft.comment.trim() === "") {
    return "hallucination labels need a comment";
  }
  return "";
}

export function canSubmit(draft: Draft): boolean {
  return submitBlocker(draft) === "";
}
