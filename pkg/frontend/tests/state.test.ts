import { describe, expect, it } from "vitest";
import { createExplorerStore, sameSelection } from "../src/state.js";
import {
  createFakeApi,
  flushMicrotasks,
  makeQueryResponse,
  makeSummary,
} from "./helpers.js";

describe("sameSelection", () => {
  it("requires equal ids in equal order", () => {
    expect(sameSelection(["a", "b"], ["a", "b"])).toBe(true);
    expect(sameSelection(["a", "b"], ["b", "a"])).toBe(false);
    expect(sameSelection(["a"], ["a", "b"])).toBe(false);
    expect(sameSelection([], [])).toBe(true);
  });
});

describe("createExplorerStore", () => {
  it("loads the initial view through an empty-selection query", async () => {
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const done = store.refresh();
    expect(store.state.phase).toBe("loading");
    pending[0].d.resolve(makeQueryResponse([]));
    await done;

    expect(store.state.phase).toBe("idle");
    expect(store.state.view).not.toBeNull();
    expect(store.state.summary).toBeNull();
    expect(store.state.session).toBe("session-1");
  });

  it("moves the selection optimistically and confirms on response", async () => {
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const done = store.toggleValue("C001");
    expect(store.state.selection).toEqual(["C001"]);
    expect(store.state.confirmed).toEqual([]);

    pending[0].d.resolve(makeQueryResponse(["C001"]));
    await done;
    expect(store.state.confirmed).toEqual(["C001"]);
    expect(store.state.summary).not.toBeNull();
  });

  it("toggles an already selected value off", async () => {
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const first = store.toggleValue("C001");
    pending[0].d.resolve(makeQueryResponse(["C001"]));
    await first;

    const second = store.toggleValue("C001");
    expect(pending[1].target).toEqual([]);
    pending[1].d.resolve(makeQueryResponse([]));
    await second;
    expect(store.state.confirmed).toEqual([]);
  });

  it("keeps click order when removing from the middle", async () => {
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const setup = store.toggleValue("A");
    pending[0].d.resolve(makeQueryResponse(["A"]));
    await setup;
    const grow = store.toggleValue("B");
    pending[1].d.resolve(makeQueryResponse(["A", "B"]));
    await grow;
    const more = store.toggleValue("C");
    pending[2].d.resolve(makeQueryResponse(["A", "B", "C"]));
    await more;

    const drop = store.removeValue("B");
    expect(pending[3].target).toEqual(["A", "C"]);
    pending[3].d.resolve(makeQueryResponse(["A", "C"]));
    await drop;
    expect(store.state.selection).toEqual(["A", "C"]);
  });

  it("aborts the older request when a newer click arrives", async () => {
    const { api, pending } = createFakeApi({ rejectOnAbort: true });
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const first = store.toggleValue("A");
    const second = store.toggleValue("B");

    expect(pending[0].signal?.aborted).toBe(true);
    expect(pending[1].signal?.aborted).toBe(false);
    expect(pending[1].target).toEqual(["A", "B"]);

    pending[1].d.resolve(makeQueryResponse(["A", "B"]));
    await Promise.all([first, second]);

    expect(store.state.phase).toBe("idle");
    expect(store.state.error).toBeNull();
    expect(store.state.confirmed).toEqual(["A", "B"]);
  });

  it("drops a late response whose echoed selection is stale", async () => {
    // The fake ignores abort here, so the older response still lands.
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const first = store.toggleValue("A");
    const second = store.toggleValue("B");

    const fresh = makeQueryResponse(["A", "B"], {
      summary: makeSummary({ sentences: ["Fresh answer."] }),
    });
    pending[1].d.resolve(fresh);
    await second;
    expect(store.state.summary?.sentences).toEqual(["Fresh answer."]);

    const stale = makeQueryResponse(["A"], {
      summary: makeSummary({ sentences: ["Stale answer."] }),
    });
    pending[0].d.resolve(stale);
    await first;

    expect(store.state.selection).toEqual(["A", "B"]);
    expect(store.state.summary?.sentences).toEqual(["Fresh answer."]);
  });

  it("rolls the optimistic selection back when the query fails", async () => {
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const setup = store.toggleValue("A");
    pending[0].d.resolve(makeQueryResponse(["A"]));
    await setup;

    const doomed = store.toggleValue("B");
    expect(store.state.selection).toEqual(["A", "B"]);
    pending[1].d.reject(new Error("connection refused"));
    await doomed;

    expect(store.state.selection).toEqual(["A"]);
    expect(store.state.phase).toBe("error");
    expect(store.state.error).toBe("connection refused");
  });

  it("threads the session token through subsequent queries", async () => {
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const boot = store.refresh();
    expect(pending[0].session).toBeNull();
    pending[0].d.resolve(makeQueryResponse([], { session: "tok-9" }));
    await boot;

    const next = store.toggleValue("A");
    expect(pending[1].session).toBe("tok-9");
    pending[1].d.resolve(makeQueryResponse(["A"], { session: "tok-9" }));
    await next;
  });

  it("notifies subscribers on every state change", async () => {
    const { api, pending } = createFakeApi();
    const phases: string[] = [];
    const store = createExplorerStore({
      api,
      topicId: "toy-harbor",
      onChange: (state) => phases.push(state.phase),
    });

    const done = store.toggleValue("A");
    pending[0].d.resolve(makeQueryResponse(["A"]));
    await done;
    await flushMicrotasks();

    expect(phases).toEqual(["loading", "idle"]);
  });

  it("resetAll clears the whole selection in one query", async () => {
    const { api, pending } = createFakeApi();
    const store = createExplorerStore({ api, topicId: "toy-harbor" });

    const setup = store.toggleValue("A");
    pending[0].d.resolve(makeQueryResponse(["A"]));
    await setup;

    const cleared = store.resetAll();
    expect(pending[1].target).toEqual([]);
    pending[1].d.resolve(makeQueryResponse([]));
    await cleared;
    expect(store.state.selection).toEqual([]);
    expect(store.state.summary).toBeNull();
  });
});
