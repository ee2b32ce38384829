import { clearChildren, el } from "../dom.js";
import {
  ENTITY_CATEGORIES,
  type DocumentResponse,
  type FacetKind,
  type FacetRow,
  type HighlightSpan,
  type HistoryResponse,
  type SentencesResponse,
} from "../types.js";

export type PopupKind = "show-all" | "sentences" | "document" | "history";

const OVERLAY_CLASS = "popup-overlay";
const DIALOG_CLASS = "popup-dialog";
const HIGHLIGHT_CLASS = "mention-highlight";
const FLAGGED_CLASS = "doc-sentence--flagged";

const CATEGORY_TABS: Record<string, string> = {
  PERSON: "Person",
  LOCATION: "Location",
  ORGANIZATION: "Organization",
  MISCELLANEOUS: "Miscellaneous",
};

export interface PopupHost {
  element: HTMLElement;
  /** Opens a popup, replacing whatever was open; at most one at a time. */
  open(kind: PopupKind, title: string, body: HTMLElement): void;
  close(): void;
  current(): PopupKind | null;
  destroy(): void;
}

export function createPopupHost(): PopupHost {
  const element = el("div", OVERLAY_CLASS);
  element.hidden = true;
  let openKind: PopupKind | null = null;

  element.addEventListener("click", (event) => {
    if (event.target === element) {
      host.close();
    }
  });

  const host: PopupHost = {
    element,

    open(kind, title, body) {
      clearChildren(element);
      const dialog = el("div", DIALOG_CLASS);
      dialog.dataset.popup = kind;

      const header = el("div", "popup-header");
      header.appendChild(el("h2", "popup-title", title));
      const close = el("button", "popup-close", "✕");
      close.type = "button";
      close.setAttribute("aria-label", "close");
      close.addEventListener("click", () => host.close());
      header.appendChild(close);
      dialog.appendChild(header);

      const bodyWrap = el("div", "popup-body");
      bodyWrap.appendChild(body);
      dialog.appendChild(bodyWrap);

      element.appendChild(dialog);
      element.hidden = false;
      openKind = kind;
    },

    close() {
      clearChildren(element);
      element.hidden = true;
      openKind = null;
    },

    current() {
      return openKind;
    },

    destroy() {
      host.close();
      element.remove();
    },
  };
  return host;
}

/**
 * Text with mention spans wrapped in <b>. Spans arrive as character
 * offsets; overlapping ranges (two selected values sharing tokens) are
 * merged so the output never nests or duplicates text.
 */
export function renderHighlighted(
  text: string,
  spans: Pick<HighlightSpan, "char_start" | "char_end">[],
): DocumentFragment {
  const clamped = spans
    .map((s) => ({
      start: Math.max(0, Math.min(s.char_start, text.length)),
      end: Math.max(0, Math.min(s.char_end, text.length)),
    }))
    .filter((s) => s.end > s.start)
    .sort((a, b) => a.start - b.start || a.end - b.end);

  const merged: { start: number; end: number }[] = [];
  for (const span of clamped) {
    const last = merged[merged.length - 1];
    if (last && span.start <= last.end) {
      last.end = Math.max(last.end, span.end);
    } else {
      merged.push({ ...span });
    }
  }

  const fragment = document.createDocumentFragment();
  let cursor = 0;
  for (const span of merged) {
    if (span.start > cursor) {
      fragment.appendChild(
        document.createTextNode(text.slice(cursor, span.start)),
      );
    }
    const bold = el("b", HIGHLIGHT_CLASS, text.slice(span.start, span.end));
    fragment.appendChild(bold);
    cursor = span.end;
  }
  if (cursor < text.length) {
    fragment.appendChild(document.createTextNode(text.slice(cursor)));
  }
  return fragment;
}

export interface ShowAllOptions {
  onToggleValue?: (valueId: string) => void;
}

function valueRow(row: FacetRow, options: ShowAllOptions): HTMLElement {
  const button = el("button", "popup-value-row");
  button.type = "button";
  button.dataset.valueId = row.value_id;
  if (row.selected) {
    button.classList.add("popup-value-row--selected");
  }
  button.appendChild(el("span", "popup-value-row__label", row.label));
  button.appendChild(
    el("span", "popup-value-row__count", String(row.frequency)),
  );
  button.addEventListener("click", () => {
    options.onToggleValue?.(row.value_id);
  });
  return button;
}

/**
 * Body of the "Show all" popup: the full value list of one facet. The
 * entities facet is split into category tabs; the others are flat lists.
 */
export function buildShowAllBody(
  kind: FacetKind,
  rows: FacetRow[],
  options: ShowAllOptions = {},
): HTMLElement {
  const body = el("div", "show-all");

  if (kind !== "ENTITIES") {
    const list = el("div", "show-all__list");
    for (const row of rows) {
      list.appendChild(valueRow(row, options));
    }
    body.appendChild(list);
    return body;
  }

  const byCategory = new Map<string, FacetRow[]>();
  for (const category of ENTITY_CATEGORIES) {
    byCategory.set(category, []);
  }
  for (const row of rows) {
    const bucket = byCategory.get(row.category ?? "");
    if (bucket) {
      bucket.push(row);
    }
  }

  const tabBar = el("div", "show-all__tabs");
  const list = el("div", "show-all__list");
  const tabs = new Map<string, HTMLButtonElement>();

  function activate(category: string): void {
    for (const [name, tab] of tabs) {
      tab.classList.toggle("show-all__tab--active", name === category);
    }
    clearChildren(list);
    const bucket = byCategory.get(category) ?? [];
    if (bucket.length === 0) {
      list.appendChild(
        el("div", "show-all__empty", "No entities in this category."),
      );
      return;
    }
    for (const row of bucket) {
      list.appendChild(valueRow(row, options));
    }
  }

  for (const category of ENTITY_CATEGORIES) {
    const count = byCategory.get(category)?.length ?? 0;
    const tab = el(
      "button",
      "show-all__tab",
      `${CATEGORY_TABS[category]} (${count})`,
    );
    tab.type = "button";
    tab.dataset.category = category;
    tab.addEventListener("click", () => activate(category));
    tabs.set(category, tab);
    tabBar.appendChild(tab);
  }

  const firstNonEmpty =
    ENTITY_CATEGORIES.find((c) => (byCategory.get(c)?.length ?? 0) > 0) ??
    ENTITY_CATEGORIES[0];
  activate(firstNonEmpty);

  body.appendChild(tabBar);
  body.appendChild(list);
  return body;
}

export interface SentencesBodyOptions {
  onOpenDocument?: (docId: string) => void;
}

/** Original-sentences popup body: sentences grouped by document. */
export function buildSentencesBody(
  data: SentencesResponse,
  options: SentencesBodyOptions = {},
): HTMLElement {
  const body = el("div", "sentences-popup");
  for (const group of data.groups) {
    const section = el("section", "sentences-group");
    section.dataset.docId = group.doc_id;
    const title = el("button", "sentences-group__title", group.title);
    title.type = "button";
    title.title = "open the full document";
    title.addEventListener("click", () => {
      options.onOpenDocument?.(group.doc_id);
    });
    section.appendChild(title);
    const list = el("div", "sentences-group__list");
    for (const sentence of group.sentences) {
      const item = el("p", "popup-sentence");
      item.dataset.sentIndex = String(sentence.sent_index);
      item.appendChild(renderHighlighted(sentence.text, sentence.spans));
      list.appendChild(item);
    }
    section.appendChild(list);
    body.appendChild(section);
  }
  return body;
}

/** Full-document popup body; sentences backing the summary are marked. */
export function buildDocumentBody(data: DocumentResponse): HTMLElement {
  const body = el("div", "document-popup");
  const list = el("div", "document-popup__sentences");
  for (const sentence of data.sentences) {
    const item = el("p", "popup-sentence");
    item.dataset.sentIndex = String(sentence.sent_index);
    if (sentence.flagged) {
      item.classList.add(FLAGGED_CLASS);
    }
    item.appendChild(renderHighlighted(sentence.text, sentence.spans));
    list.appendChild(item);
  }
  body.appendChild(list);
  return body;
}

/** History popup body; the server returns entries newest first. */
export function buildHistoryBody(data: HistoryResponse): HTMLElement {
  const body = el("div", "history-popup");
  if (data.entries.length === 0) {
    body.appendChild(el("p", "history-empty", "No summaries yet."));
    return body;
  }
  for (const entry of data.entries) {
    const item = el("article", "history-entry");
    const header = el("div", "history-entry__header");
    header.appendChild(
      el(
        "span",
        "history-entry__selection",
        entry.selected.map((v) => v.label).join(" + "),
      ),
    );
    header.appendChild(
      el(
        "span",
        "history-entry__meta",
        `${entry.sentence_count} sentence${entry.sentence_count === 1 ? "" : "s"}, ` +
          new Date(entry.timestamp * 1000).toLocaleTimeString(),
      ),
    );
    item.appendChild(header);
    item.appendChild(el("p", "history-entry__summary", entry.summary_text));
    body.appendChild(item);
  }
  return body;
}
