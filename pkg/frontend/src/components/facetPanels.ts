import { clearChildren, el } from "../dom.js";
import { FACET_KINDS, type FacetKind, type FacetView } from "../types.js";

/** Values shown inline per facet before the list folds behind "Show all". */
export const INLINE_VALUE_COUNT = 6;

export const FACET_TITLES: Record<FacetKind, string> = {
  CONCEPTS: "Concepts",
  ENTITIES: "Entities",
  STATEMENTS: "Statements",
};

const PANEL_CLASS = "facet-panel";
const ROW_CLASS = "facet-row";
const ROW_SELECTED_CLASS = "facet-row--selected";
const METER_CLASS = "facet-meter";
const METER_FILL_CLASS = "facet-meter__fill";
const EMPTY_CLASS = "facet-empty";
const SHOW_ALL_CLASS = "facet-show-all";

export interface FacetPanelsOptions {
  onToggleValue?: (valueId: string) => void;
  onShowAll?: (facet: FacetKind) => void;
  onHoverValue?: (valueId: string, anchor: HTMLElement) => void;
  onLeaveValue?: () => void;
}

export interface FacetPanelsController {
  element: HTMLElement;
  setView(view: FacetView | null): void;
  destroy(): void;
}

/**
 * The three facet columns. Each shows the top values of the current view
 * with a frequency meter; longer lists fold behind a "Show all" button.
 * Every number rendered here comes straight from a server facet view.
 */
export function createFacetPanels(
  options: FacetPanelsOptions = {},
): FacetPanelsController {
  const element = el("div", "facet-panels");

  function renderPanel(kind: FacetKind, view: FacetView): HTMLElement {
    const rows = view[kind];
    const panel = el("section", PANEL_CLASS);
    panel.dataset.facet = kind;

    const heading = el(
      "h2",
      "facet-panel__title",
      `${FACET_TITLES[kind]} (${view.totals[kind]})`,
    );
    panel.appendChild(heading);

    if (rows.length === 0) {
      panel.appendChild(
        el("div", EMPTY_CLASS, "No values match this selection."),
      );
      return panel;
    }

    const maxFrequency = rows[0]?.frequency ?? 1;
    const list = el("div", "facet-panel__rows");
    for (const row of rows.slice(0, INLINE_VALUE_COUNT)) {
      const button = el("button", ROW_CLASS);
      button.type = "button";
      button.dataset.valueId = row.value_id;
      if (row.selected) {
        button.classList.add(ROW_SELECTED_CLASS);
      }
      button.appendChild(el("span", "facet-row__label", row.label));

      const meter = el("span", METER_CLASS);
      const fill = el("span", METER_FILL_CLASS);
      const percent = maxFrequency > 0 ? (row.frequency / maxFrequency) * 100 : 0;
      fill.style.width = `${percent}%`;
      meter.appendChild(fill);
      meter.addEventListener("mouseenter", () => {
        options.onHoverValue?.(row.value_id, meter);
      });
      meter.addEventListener("mouseleave", () => {
        options.onLeaveValue?.();
      });
      button.appendChild(meter);

      button.appendChild(el("span", "facet-row__count", String(row.frequency)));
      button.addEventListener("click", () => {
        options.onToggleValue?.(row.value_id);
      });
      list.appendChild(button);
    }
    panel.appendChild(list);

    if (rows.length > INLINE_VALUE_COUNT) {
      const showAll = el("button", SHOW_ALL_CLASS, `Show all (${rows.length})`);
      showAll.type = "button";
      showAll.addEventListener("click", () => {
        options.onShowAll?.(kind);
      });
      panel.appendChild(showAll);
    }
    return panel;
  }

  return {
    element,

    setView(view) {
      clearChildren(element);
      if (!view) {
        return;
      }
      for (const kind of FACET_KINDS) {
        element.appendChild(renderPanel(kind, view));
      }
    },

    destroy() {
      clearChildren(element);
      element.remove();
    },
  };
}
