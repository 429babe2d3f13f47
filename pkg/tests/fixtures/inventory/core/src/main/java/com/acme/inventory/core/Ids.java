package com.acme.inventory.core;

/** Monotonic ids seeded from a {@link Clock}. */
public final class Ids {
    private final Clock clock;
    private long last;

    public Ids(Clock clock) {
        this.clock = clock;
    }

    public synchronized long next() {
        last = Math.max(last + 1, clock.now());
        return last;
    }
}
