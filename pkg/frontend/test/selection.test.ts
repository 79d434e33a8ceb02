import { describe, expect, it } from "vitest";

import { SelectionModel } from "../src/selection.js";

describe("pick-two gating", () => {
  it("enables submit iff exactly two distinct cards are picked", () => {
    const picks = new SelectionModel();
    expect(picks.canSubmit).toBe(false);

    picks.toggle(3);
    expect(picks.canSubmit).toBe(false); // one pick

    picks.toggle(7);
    expect(picks.canSubmit).toBe(true); // two picks
    expect(picks.pair).toEqual([3, 7]);

    picks.toggle(7);
    expect(picks.canSubmit).toBe(false); // back to one
  });

  it("refuses a third pick instead of evicting", () => {
    const picks = new SelectionModel();
    picks.toggle(0);
    picks.toggle(1);
    expect(picks.toggle(2)).toBe(false);
    expect(picks.selected).toEqual([0, 1]);
    expect(picks.canSubmit).toBe(true);
  });

  it("toggling the same card twice deselects it", () => {
    const picks = new SelectionModel();
    picks.toggle(5);
    picks.toggle(5);
    expect(picks.selected).toEqual([]);
    expect(picks.has(5)).toBe(false);
  });

  it("never exposes a pair while invalid", () => {
    const picks = new SelectionModel();
    picks.toggle(4);
    expect(() => picks.pair).toThrow(/exactly 2/);
  });

  it("clear resets the round", () => {
    const picks = new SelectionModel();
    picks.toggle(1);
    picks.toggle(2);
    picks.clear();
    expect(picks.selected).toEqual([]);
    expect(picks.canSubmit).toBe(false);
  });
});
