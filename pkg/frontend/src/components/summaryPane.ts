import { clearChildren, el } from "../dom.js";
import type { SummaryPayload } from "../types.js";

const SENTENCE_CLASS = "summary-sentence";
const REPEATED_CLASS = "summary-sentence--repeated";
const FALLBACK_BACKEND_PREFIX = "fallback";

export interface SummaryPaneOptions {
  onShowSentences?: () => void;
}

export interface SummaryPaneController {
  element: HTMLElement;
  setSummary(
    summary: SummaryPayload | null,
    sentenceCount: number | null,
  ): void;
  destroy(): void;
}

function backendBadgeText(backend: string): string {
  return backend.startsWith(FALLBACK_BACKEND_PREFIX)
    ? "extractive fallback"
    : backend;
}

/**
 * Renders the current summary, one span per sentence. Sentences the server
 * flagged as repeats of earlier summaries get the repeated tint class.
 */
export function createSummaryPane(
  options: SummaryPaneOptions = {},
): SummaryPaneController {
  const element = el("section", "summary-pane");

  return {
    element,

    setSummary(summary, sentenceCount) {
      clearChildren(element);

      if (summary === null) {
        element.appendChild(
          el(
            "p",
            "summary-placeholder",
            "Click a facet value to build a summary.",
          ),
        );
        return;
      }

      const header = el("div", "summary-header");
      const countText =
        sentenceCount === null
          ? "Summary"
          : `Summary of ${sentenceCount} sentence${sentenceCount === 1 ? "" : "s"}`;
      header.appendChild(el("h2", "summary-title", countText));
      header.appendChild(
        el("span", "summary-backend", backendBadgeText(summary.backend)),
      );
      element.appendChild(header);

      if (summary.empty) {
        element.appendChild(
          el("p", "summary-empty", "No sentences match this selection."),
        );
        return;
      }

      const body = el("p", "summary-body");
      summary.sentences.forEach((sentence, i) => {
        const span = el("span", SENTENCE_CLASS, sentence);
        if (summary.repeated_flags[i]) {
          span.classList.add(REPEATED_CLASS);
          span.title = "repeated from an earlier summary";
        }
        body.appendChild(span);
        body.appendChild(document.createTextNode(" "));
      });
      element.appendChild(body);

      if (summary.truncated) {
        element.appendChild(
          el(
            "p",
            "summary-truncated",
            "Input was truncated to the summarizer budget.",
          ),
        );
      }

      if (summary.source_refs.length > 0) {
        const footer = el("div", "summary-footer");
        const showSources = el(
          "button",
          "summary-sources-button",
          "Original sentences",
        );
        showSources.type = "button";
        showSources.addEventListener("click", () => {
          options.onShowSentences?.();
        });
        footer.appendChild(showSources);
        element.appendChild(footer);
      }
    },

    destroy() {
      clearChildren(element);
      element.remove();
    },
  };
}
