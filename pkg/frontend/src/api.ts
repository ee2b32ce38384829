import type {
  DocumentResponse,
  HistoryResponse,
  MentionsResponse,
  QueryResponse,
  SentenceRefDto,
  SentencesResponse,
  TopicDescriptor,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export interface ApiClient {
  listTopics(): Promise<TopicDescriptor[]>;
  query(
    topicId: string,
    selected: string[],
    session: string | null,
    signal?: AbortSignal,
  ): Promise<QueryResponse>;
  valueMentions(topicId: string, valueId: string): Promise<MentionsResponse>;
  sentences(
    topicId: string,
    refs: SentenceRefDto[],
    selected: string[],
  ): Promise<SentencesResponse>;
  document(
    topicId: string,
    docId: string,
    refs: SentenceRefDto[],
    selected: string[],
  ): Promise<DocumentResponse>;
  history(sessionToken: string): Promise<HistoryResponse>;
}

/** Serialize sentence refs into the `refs=doc:index,...` query form. */
export function formatRefs(refs: SentenceRefDto[]): string {
  return refs.map((r) => `${r.doc_id}:${r.sent_index}`).join(",");
}

/**
 * Thin typed wrapper over the backend's JSON endpoints.
 *
 * @param baseUrl Origin prefix; empty string means same-origin relative URLs.
 * @param fetchImpl Injection point for tests; defaults to the global fetch.
 */
export function createApiClient(
  baseUrl = "",
  fetchImpl?: FetchLike,
): ApiClient {
  const doFetch: FetchLike =
    fetchImpl ?? ((input, init) => fetch(input, init));

  async function request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await doFetch(baseUrl + path, init);
    if (!response.ok) {
      let message = `request failed with status ${response.status}`;
      try {
        const body = (await response.json()) as { error?: unknown };
        if (body && typeof body.error === "string") {
          message = body.error;
        }
      } catch {
        // Non-JSON error body; keep the status message.
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }

  return {
    listTopics() {
      return request<TopicDescriptor[]>("/api/topics");
    },

    query(topicId, selected, session, signal) {
      const body: Record<string, unknown> = { selected };
      if (session !== null) {
        body.session = session;
      }
      return request<QueryResponse>(
        `/api/topics/${encodeURIComponent(topicId)}/query`,
        {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify(body),
          signal,
        },
      );
    },

    valueMentions(topicId, valueId) {
      return request<MentionsResponse>(
        `/api/topics/${encodeURIComponent(topicId)}/values/${encodeURIComponent(
          valueId,
        )}/mentions`,
      );
    },

    sentences(topicId, refs, selected) {
      const params = new URLSearchParams({
        refs: formatRefs(refs),
        selected: selected.join(","),
      });
      return request<SentencesResponse>(
        `/api/topics/${encodeURIComponent(topicId)}/sentences?${params}`,
      );
    },

    document(topicId, docId, refs, selected) {
      const params = new URLSearchParams({
        refs: formatRefs(refs),
        selected: selected.join(","),
      });
      return request<DocumentResponse>(
        `/api/topics/${encodeURIComponent(topicId)}/documents/${encodeURIComponent(
          docId,
        )}?${params}`,
      );
    },

    history(sessionToken) {
      return request<HistoryResponse>(
        `/api/sessions/${encodeURIComponent(sessionToken)}/history`,
      );
    },
  };
}
