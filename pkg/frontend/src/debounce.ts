// Trailing-edge debounce: the wrapped function runs once, `delayMs` after
// the most recent call. Used to hold back preview and match requests while
// the user is still typing.

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  pending(): boolean;
  flush(): void;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs = 300,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let lastArgs: A | null = null;

  const debounced = (...args: A): void => {
    lastArgs = args;
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      const call = lastArgs as A;
      lastArgs = null;
      fn(...call);
    }, delayMs);
  };

  debounced.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    lastArgs = null;
  };

  debounced.pending = () => timer !== null;

  debounced.flush = () => {
    if (timer === null) return;
    clearTimeout(timer);
    timer = null;
    const call = lastArgs as A;
    lastArgs = null;
    fn(...call);
  };

  return debounced;
}
