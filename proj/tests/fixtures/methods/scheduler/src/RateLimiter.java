package scheduler;

public class RateLimiter {
    private final int permitsPerSecond;
    private double available;
    private long lastRefill;

    public RateLimiter(int permitsPerSecond) {
        this.permitsPerSecond = permitsPerSecond;
        this.available = permitsPerSecond;
    }

    private void refill(long nowMillis) {
        long elapsed = nowMillis - lastRefill;
        if (elapsed > 0) {
            available = Math.min(permitsPerSecond, available + elapsed * permitsPerSecond / 1000.0);
            lastRefill = nowMillis;
        }
    }

    public boolean tryAcquire(long nowMillis) {
        refill(nowMillis);
        if (available >= 1.0) {
            available -= 1.0;
            return true;
        }
        return false;
    }

    public boolean tryAcquire(long nowMillis, int permits) {
        refill(nowMillis);
        boolean ok = available >= permits;
        if (ok) available -= permits;
        return ok;
    }

    public long waitTimeMillis(long nowMillis) {
        refill(nowMillis);
        return available >= 1.0 ? 0 : (long) Math.ceil((1.0 - available) * 1000.0 / permitsPerSecond);
    }

    public int drain(long nowMillis) {
        refill(nowMillis);
        int taken = 0;
        while (available >= 1.0) {
            available -= 1.0;
            taken++;
        }
        return taken;
    }

    public double utilization() {
        double used = permitsPerSecond - available;
        return used < 0 ? 0 : used / permitsPerSecond;
    }

    public void validate() {
        assert available <= permitsPerSecond;
        if (permitsPerSecond <= 0) {
            throw new IllegalStateException("permits");
        }
    }

    public String report() {
        return String.format("%.2f of %d", available, permitsPerSecond);
    }

    public int burst(long nowMillis, int wanted) {
        int got = 0;
        do {
            if (!tryAcquire(nowMillis)) break;
            got++;
        } while (got < wanted);
        return got;
    }

    public boolean isThrottled(long nowMillis) {
        return waitTimeMillis(nowMillis) > 0;
    }

    public Object snapshot() {
        return new java.util.AbstractMap.SimpleEntry<>(permitsPerSecond, available < 1.0);
    }

    public void checkArguments(int permits) {
        require(permits > 0, "permits must be positive");
    }

    public boolean logBurst(int permits) {
        return java.util.Objects.equals(permits <= permitsPerSecond, Boolean.TRUE);
    }

    private static void require(boolean condition, String message) {
        if (!condition) throw new IllegalArgumentException(message);
    }
}
