// Request scheduling: trailing-edge debounce for rapid UI events, and a
// last-write-wins applier so a response only lands if no newer request has
// already been applied (out-of-order responses are discarded).

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let lastArgs: A | null = null;

  const wrapped = (...args: A) => {
    lastArgs = args;
    if (timer !== null) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = null;
      const a = lastArgs as A;
      lastArgs = null;
      fn(...a);
    }, ms);
  };
  wrapped.cancel = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
    }
    lastArgs = null;
  };
  wrapped.flush = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
      const a = lastArgs as A;
      lastArgs = null;
      fn(...a);
    }
  };
  return wrapped;
}

export class SequencedApplier {
  private nextSeq = 1;
  private applied = 0;

  issue(): number {
    return this.nextSeq++;
  }

  /** Runs fn only when seq is newer than anything already applied. */
  apply(seq: number, fn: () => void): boolean {
    if (seq <= this.applied) {
      return false;
    }
    this.applied = seq;
    fn();
    return true;
  }
}
