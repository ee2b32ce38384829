import { ApiError, type ApiClient } from "./api.js";
import type {
  FacetView,
  QueryResponse,
  SelectedValue,
  SummaryPayload,
} from "./types.js";

export type QueryPhase = "idle" | "loading" | "error";

export interface ExplorerState {
  topicId: string;
  /**
   * Click-ordered selection the UI is trying to show. Optimistic: it moves
   * on click and rolls back to `confirmed` if the query fails.
   */
  selection: string[];
  /** Last selection the server actually answered. */
  confirmed: string[];
  selectedInfo: SelectedValue[];
  view: FacetView | null;
  summary: SummaryPayload | null;
  sentenceCount: number | null;
  session: string | null;
  phase: QueryPhase;
  error: string | null;
}

export interface ExplorerStoreOptions {
  api: ApiClient;
  topicId: string;
  onChange?: (state: ExplorerState) => void;
}

export interface ExplorerStore {
  readonly state: ExplorerState;
  /** Re-query the current selection; used once at boot to load facet tables. */
  refresh(): Promise<void>;
  toggleValue(valueId: string): Promise<void>;
  removeValue(valueId: string): Promise<void>;
  resetAll(): Promise<void>;
  destroy(): void;
}

export function sameSelection(a: string[], b: string[]): boolean {
  return a.length === b.length && a.every((v, i) => v === b[i]);
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    return err.message;
  }
  if (err instanceof Error) {
    return err.message;
  }
  return String(err);
}

/**
 * Holds the whole exploration state and funnels every mutation through a
 * single query path.
 *
 * Concurrency rules: at most one query is in flight; a newer click aborts
 * the older request. As a second guard, a response is applied only if the
 * selection it echoes still matches the selection the UI wants, so a late
 * response that escaped the abort can never overwrite a newer state.
 */
export function createExplorerStore(
  options: ExplorerStoreOptions,
): ExplorerStore {
  let state: ExplorerState = {
    topicId: options.topicId,
    selection: [],
    confirmed: [],
    selectedInfo: [],
    view: null,
    summary: null,
    sentenceCount: null,
    session: null,
    phase: "idle",
    error: null,
  };
  let inflight: AbortController | null = null;

  function emit(): void {
    options.onChange?.(state);
  }

  async function runQuery(target: string[]): Promise<void> {
    inflight?.abort();
    const controller = new AbortController();
    inflight = controller;
    state = { ...state, selection: target, phase: "loading", error: null };
    emit();

    let response: QueryResponse;
    try {
      response = await options.api.query(
        state.topicId,
        target,
        state.session,
        controller.signal,
      );
    } catch (err) {
      if (controller.signal.aborted) {
        return; // superseded by a newer click
      }
      state = {
        ...state,
        selection: state.confirmed,
        phase: "error",
        error: describeError(err),
      };
      emit();
      return;
    }

    const answered = response.selected.map((v) => v.value_id);
    if (!sameSelection(answered, state.selection)) {
      return; // stale response, a newer target took over
    }
    if (inflight === controller) {
      inflight = null;
    }
    state = {
      ...state,
      selection: answered,
      confirmed: answered,
      selectedInfo: response.selected,
      view: response.facets,
      summary: response.summary,
      sentenceCount: response.sentence_count,
      session: response.session,
      phase: "idle",
      error: null,
    };
    emit();
  }

  return {
    get state() {
      return state;
    },

    refresh() {
      return runQuery([...state.selection]);
    },

    toggleValue(valueId: string) {
      const next = state.selection.includes(valueId)
        ? state.selection.filter((v) => v !== valueId)
        : [...state.selection, valueId];
      return runQuery(next);
    },

    removeValue(valueId: string) {
      return runQuery(state.selection.filter((v) => v !== valueId));
    },

    resetAll() {
      return runQuery([]);
    },

    destroy() {
      inflight?.abort();
      inflight = null;
    },
  };
}
