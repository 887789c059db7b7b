package geometry;

public class Interval implements Comparable<Interval> {
    private final long lo;
    private final long hi;

    public Interval(long lo, long hi) {
        if (lo > hi) throw new IllegalArgumentException(lo + " > " + hi);
        this.lo = lo;
        this.hi = hi;
    }

    public boolean contains(long v) {
        return lo <= v && v < hi;
    }

    public boolean overlaps(Interval o) {
        return lo < o.hi && o.lo < hi;
    }

    public Interval intersect(Interval o) {
        long a = Math.max(lo, o.lo);
        long b = Math.min(hi, o.hi);
        return a <= b ? new Interval(a, b) : null;
    }

    public long length() {
        return hi - lo;
    }

    public boolean isEmpty() {
        return hi <= lo;
    }

    @Override
    public int compareTo(Interval o) {
        if (lo < o.lo) return -1;
        if (lo > o.lo) return 1;
        return Long.compare(hi, o.hi);
    }

    public Interval union(Interval o) {
        if (!overlaps(o) && hi != o.lo && o.hi != lo) {
            return null;
        }
        return new Interval(Math.min(lo, o.lo), Math.max(hi, o.hi));
    }

    public long clamp(long v) {
        if (v < lo) {
            return lo;
        } else if (v >= hi) {
            return hi - 1;
        }
        return v;
    }

    public Interval shift(long by) {
        return new Interval(lo + by, hi + by);
    }

    public Interval[] splitAt(long point) {
        boolean inside = point > lo && point < hi;
        if (!inside) return new Interval[] {this};
        return new Interval[] {new Interval(lo, point), new Interval(point, hi)};
    }

    public Interval widen(long margin) {
        return new Interval(lo - margin, hi + (margin > 0 ? margin : 0));
    }

    public int bucketOf(long v, int buckets) {
        long width = Math.max(1, length() / buckets);
        int b = (int) ((v - lo) / width);
        return Math.min(b, buckets - 1);
    }

    @Override
    public String toString() {
        return "[" + lo + ", " + hi + ")";
    }
}
