/** Local pick state: at most two distinct candidates, submit iff exactly two. */

export const MAX_PICKS = 2;

export class SelectionModel {
  private picks: number[] = [];

  /** Toggle a candidate; a third pick is refused rather than evicting one. */
  toggle(id: number): boolean {
    const at = this.picks.indexOf(id);
    if (at >= 0) {
      this.picks.splice(at, 1);
      return true;
    }
    if (this.picks.length >= MAX_PICKS) {
      return false;
    }
    this.picks.push(id);
    return true;
  }

  has(id: number): boolean {
    return this.picks.includes(id);
  }

  get selected(): number[] {
    return [...this.picks];
  }

  get canSubmit(): boolean {
    return this.picks.length === MAX_PICKS && new Set(this.picks).size === MAX_PICKS;
  }

  /** The pair to POST; only valid when canSubmit. */
  get pair(): [number, number] {
    if (!this.canSubmit) {
      throw new Error(`selection needs exactly ${MAX_PICKS} candidates`);
    }
    return [this.picks[0]!, this.picks[1]!];
  }

  clear(): void {
    this.picks = [];
  }
}
