import type { ApiClient } from "../src/api.js";
import type {
  FacetRow,
  FacetView,
  QueryResponse,
  SelectedValue,
  SummaryPayload,
  TopicDescriptor,
} from "../src/types.js";

export const TOPIC: TopicDescriptor = {
  topic_id: "toy-harbor",
  display_name: "Harbor City",
  document_count: 6,
  facet_counts: { CONCEPTS: 3, ENTITIES: 6, STATEMENTS: 2 },
};

export function makeRow(overrides: Partial<FacetRow> = {}): FacetRow {
  return {
    value_id: "C001",
    label: "crash",
    frequency: 4,
    global_frequency: 4,
    category: null,
    selected: false,
    ...overrides,
  };
}

export function makeView(overrides: Partial<FacetView> = {}): FacetView {
  const view: FacetView = {
    CONCEPTS: [],
    ENTITIES: [],
    STATEMENTS: [],
    totals: { CONCEPTS: 0, ENTITIES: 0, STATEMENTS: 0 },
    ...overrides,
  };
  view.totals = {
    CONCEPTS: view.CONCEPTS.length,
    ENTITIES: view.ENTITIES.length,
    STATEMENTS: view.STATEMENTS.length,
    ...(overrides.totals ?? {}),
  };
  return view;
}

export function makeSummary(
  overrides: Partial<SummaryPayload> = {},
): SummaryPayload {
  const sentences = overrides.sentences ?? ["The ferry hit the pier."];
  return {
    text: sentences.join(" "),
    sentences,
    source_refs: [{ doc_id: "apw01", sent_index: 0 }],
    truncated: false,
    backend: "fallback:extractive",
    empty: false,
    repeated_flags: sentences.map(() => false),
    ...overrides,
  };
}

export function echoSelected(ids: string[]): SelectedValue[] {
  return ids.map((id) => ({
    value_id: id,
    label: id,
    facet: "CONCEPTS" as const,
    category: null,
  }));
}

export function makeQueryResponse(
  selected: string[],
  overrides: Partial<QueryResponse> = {},
): QueryResponse {
  return {
    session: "session-1",
    topic_id: TOPIC.topic_id,
    selected: echoSelected(selected),
    facets: makeView(),
    summary: selected.length > 0 ? makeSummary() : null,
    sentence_count: 25,
    truncated: false,
    ...overrides,
  };
}

export interface Deferred<T> {
  promise: Promise<T>;
  resolve(value: T): void;
  reject(reason?: unknown): void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export interface PendingQuery {
  target: string[];
  session: string | null;
  signal?: AbortSignal;
  d: Deferred<QueryResponse>;
}

export interface FakeApi {
  api: ApiClient;
  pending: PendingQuery[];
}

/**
 * ApiClient double whose query calls stay pending until the test resolves
 * them, so response ordering is fully scripted. With `rejectOnAbort` the
 * promise rejects when its signal aborts, mirroring real fetch; without
 * it the response can still land late, exercising the stale-echo guard.
 */
export function createFakeApi(
  opts: { rejectOnAbort?: boolean } = {},
): FakeApi {
  const pending: PendingQuery[] = [];
  const api: ApiClient = {
    async listTopics() {
      return [TOPIC];
    },
    query(_topicId, selected, session, signal) {
      const d = deferred<QueryResponse>();
      if (opts.rejectOnAbort && signal) {
        signal.addEventListener("abort", () => {
          d.reject(new DOMException("The operation was aborted.", "AbortError"));
        });
      }
      pending.push({ target: [...selected], session, signal, d });
      return d.promise;
    },
    async valueMentions() {
      throw new Error("not faked");
    },
    async sentences() {
      throw new Error("not faked");
    },
    async document() {
      throw new Error("not faked");
    },
    async history() {
      throw new Error("not faked");
    },
  };
  return { api, pending };
}

export async function flushMicrotasks(): Promise<void> {
  await Promise.resolve();
  await Promise.resolve();
}
