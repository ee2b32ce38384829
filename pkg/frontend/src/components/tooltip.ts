import { clearChildren, el } from "../dom.js";
import type { MentionForm } from "../types.js";

export interface MentionTooltipController {
  element: HTMLElement;
  /** Show the distinct surface forms of a value next to its anchor. */
  showForms(anchor: HTMLElement, label: string, forms: MentionForm[]): void;
  showMessage(anchor: HTMLElement, label: string, message: string): void;
  hide(): void;
  destroy(): void;
}

export function createMentionTooltip(): MentionTooltipController {
  const element = el("div", "mention-tooltip");
  element.hidden = true;

  function position(anchor: HTMLElement): void {
    const rect = anchor.getBoundingClientRect();
    element.style.left = `${rect.left + window.scrollX}px`;
    element.style.top = `${rect.bottom + window.scrollY + 4}px`;
  }

  function show(anchor: HTMLElement, label: string, body: HTMLElement): void {
    clearChildren(element);
    element.appendChild(el("div", "mention-tooltip__title", label));
    element.appendChild(body);
    element.hidden = false;
    position(anchor);
  }

  return {
    element,

    showForms(anchor, label, forms) {
      const list = el("ul", "mention-tooltip__forms");
      for (const form of forms) {
        list.appendChild(el("li", undefined, `${form.surface} (${form.count})`));
      }
      show(anchor, label, list);
    },

    showMessage(anchor, label, message) {
      show(anchor, label, el("div", "mention-tooltip__message", message));
    },

    hide() {
      element.hidden = true;
    },

    destroy() {
      element.remove();
    },
  };
}
