import { describe, expect, it, vi } from "vitest";
import { createChips } from "../src/components/chips.js";

const SELECTION = [
  { valueId: "C001", label: "crash" },
  { valueId: "E002", label: "Chen" },
];

describe("createChips", () => {
  it("renders chips in click order with labels", () => {
    const chips = createChips();
    chips.setSelection(SELECTION);

    const labels = [...chips.element.querySelectorAll(".chip__label")].map(
      (n) => n.textContent,
    );
    expect(labels).toEqual(["crash", "Chen"]);
  });

  it("shows a placeholder and no reset button when empty", () => {
    const chips = createChips();
    chips.setSelection([]);

    expect(chips.element.querySelector(".chips-placeholder")).not.toBeNull();
    expect(chips.element.querySelector(".chips-reset")).toBeNull();
  });

  it("raises onRemove with the chip's value id", () => {
    const onRemove = vi.fn();
    const chips = createChips({ onRemove });
    chips.setSelection(SELECTION);

    chips.element
      .querySelector<HTMLButtonElement>('[data-value-id="E002"] .chip__remove')!
      .click();
    expect(onRemove).toHaveBeenCalledTimes(1);
    expect(onRemove).toHaveBeenCalledWith("E002");
  });

  it("raises onReset from the reset-all button", () => {
    const onReset = vi.fn();
    const chips = createChips({ onReset });
    chips.setSelection(SELECTION);

    chips.element.querySelector<HTMLButtonElement>(".chips-reset")!.click();
    expect(onReset).toHaveBeenCalledTimes(1);
  });

  it("labels remove buttons for screen readers", () => {
    const chips = createChips();
    chips.setSelection(SELECTION);

    const button = chips.element.querySelector(
      '[data-value-id="C001"] .chip__remove',
    )!;
    expect(button.getAttribute("aria-label")).toBe("remove crash");
  });
});
