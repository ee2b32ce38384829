import { clearChildren, el } from "../dom.js";

const CHIP_CLASS = "chip";
const REMOVE_CLASS = "chip__remove";
const RESET_CLASS = "chips-reset";
const PLACEHOLDER_CLASS = "chips-placeholder";

export interface ChipData {
  valueId: string;
  label: string;
}

export interface ChipsOptions {
  onRemove?: (valueId: string) => void;
  onReset?: () => void;
}

export interface ChipsController {
  element: HTMLElement;
  setSelection(values: ChipData[]): void;
  destroy(): void;
}

/**
 * The active-filters bar: one removable chip per selected value, in click
 * order, plus a reset-all button once anything is selected.
 */
export function createChips(options: ChipsOptions = {}): ChipsController {
  const element = el("div", "chips-bar");

  return {
    element,

    setSelection(values) {
      clearChildren(element);
      if (values.length === 0) {
        element.appendChild(
          el("span", PLACEHOLDER_CLASS, "No filters active."),
        );
        return;
      }
      for (const value of values) {
        const chip = el("span", CHIP_CLASS);
        chip.dataset.valueId = value.valueId;
        chip.appendChild(el("span", "chip__label", value.label));
        const remove = el("button", REMOVE_CLASS, "✕");
        remove.type = "button";
        remove.setAttribute("aria-label", `remove ${value.label}`);
        remove.addEventListener("click", () => {
          options.onRemove?.(value.valueId);
        });
        chip.appendChild(remove);
        element.appendChild(chip);
      }
      const reset = el("button", RESET_CLASS, "Reset all");
      reset.type = "button";
      reset.addEventListener("click", () => {
        options.onReset?.();
      });
      element.appendChild(reset);
    },

    destroy() {
      clearChildren(element);
      element.remove();
    },
  };
}
