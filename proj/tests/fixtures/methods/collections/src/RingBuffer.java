package collections;

public class RingBuffer<T> {
    private final Object[] slots;
    private int head;
    private int count;

    public RingBuffer(int capacity) {
        if (capacity <= 0) throw new IllegalArgumentException("capacity");
        slots = new Object[capacity];
    }

    public boolean offer(T item) {
        if (count >= slots.length) {
            return false;
        }
        slots[(head + count) % slots.length] = item;
        count++;
        return true;
    }

    @SuppressWarnings("unchecked")
    public T poll() {
        if (count <= 0) return null;
        T item = (T) slots[head];
        slots[head] = null;
        head = (head + 1) % slots.length;
        count--;
        return item;
    }

    @SuppressWarnings("unchecked")
    public T peekAt(int offset) {
        if (offset < 0 || offset >= count) {
            return null;
        }
        return (T) slots[(head + offset) % slots.length];
    }

    public boolean isFull() {
        return count >= slots.length;
    }

    public int remaining() {
        int free = slots.length - count;
        return free > 0 ? free : 0;
    }

    public void drainTo(java.util.List<T> sink, int max) {
        int moved = 0;
        while (moved < max && count > 0) {
            sink.add(poll());
            moved++;
        }
    }

    public void fill(T value) {
        do {
            offer(value);
        } while (count < slots.length);
    }

    public int capacity() {
        return slots.length;
    }
}
