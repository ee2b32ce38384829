/**
 * Wire types for the facetnav HTTP API.
 *
 * These mirror the JSON bodies produced by the backend verbatim; the UI
 * never derives facet numbers itself, it only displays what arrives here.
 */

export type FacetKind = "CONCEPTS" | "ENTITIES" | "STATEMENTS";

export const FACET_KINDS: readonly FacetKind[] = [
  "CONCEPTS",
  "ENTITIES",
  "STATEMENTS",
];

export const ENTITY_CATEGORIES = [
  "PERSON",
  "LOCATION",
  "ORGANIZATION",
  "MISCELLANEOUS",
] as const;

export type EntityCategory = (typeof ENTITY_CATEGORIES)[number];

export interface TopicDescriptor {
  topic_id: string;
  display_name: string;
  document_count: number;
  facet_counts: Record<FacetKind, number>;
}

/** One facet-value row as returned inside a facet view. */
export interface FacetRow {
  value_id: string;
  label: string;
  /** Mention count within the current sentence intersection. */
  frequency: number;
  /** Mention count over the whole topic, independent of selection. */
  global_frequency: number;
  category: string | null;
  selected: boolean;
}

export interface FacetView {
  CONCEPTS: FacetRow[];
  ENTITIES: FacetRow[];
  STATEMENTS: FacetRow[];
  totals: Record<FacetKind, number>;
}

export interface SentenceRefDto {
  doc_id: string;
  sent_index: number;
}

export interface SummaryPayload {
  text: string;
  sentences: string[];
  source_refs: SentenceRefDto[];
  truncated: boolean;
  backend: string;
  empty: boolean;
  /** Parallel to sentences; true marks a sentence already shown earlier in the session. */
  repeated_flags: boolean[];
}

export interface SelectedValue {
  value_id: string;
  label: string;
  facet: FacetKind;
  category: string | null;
}

export interface QueryResponse {
  session: string;
  topic_id: string;
  selected: SelectedValue[];
  facets: FacetView;
  summary: SummaryPayload | null;
  sentence_count: number;
  truncated: boolean;
}

export interface MentionForm {
  surface: string;
  count: number;
}

export interface MentionDto {
  mention_id: string;
  doc_id: string;
  sent_index: number;
  token_start: number;
  token_end: number;
  surface: string;
}

export interface MentionsResponse {
  value_id: string;
  facet: FacetKind;
  label: string;
  category: string | null;
  frequency: number;
  forms: MentionForm[];
  mentions: MentionDto[];
}

/** Character-offset highlight for one mention of a selected value. */
export interface HighlightSpan {
  value_id: string;
  label: string;
  token_start: number;
  token_end: number;
  char_start: number;
  char_end: number;
}

export interface SentenceDto {
  sent_index: number;
  text: string;
  spans: HighlightSpan[];
}

export interface SentenceGroup {
  doc_id: string;
  title: string;
  sentences: SentenceDto[];
}

export interface SentencesResponse {
  groups: SentenceGroup[];
}

export interface DocumentSentence extends SentenceDto {
  flagged: boolean;
}

export interface DocumentResponse {
  doc_id: string;
  title: string;
  sentences: DocumentSentence[];
}

export interface HistoryEntryDto {
  selected: SelectedValue[];
  summary_text: string;
  summary_sentences: string[];
  sentence_refs: SentenceRefDto[];
  sentence_count: number;
  backend: string;
  timestamp: number;
}

export interface HistoryResponse {
  session: string;
  entries: HistoryEntryDto[];
}
