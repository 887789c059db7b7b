package scheduler;

import java.util.ArrayList;
import java.util.Comparator;
import java.util.List;
import java.util.PriorityQueue;

public class TaskQueue {
    public static class Task {
        final String name;
        final int priority;
        final long deadline;
        int attempts;

        Task(String name, int priority, long deadline) {
            this.name = name;
            this.priority = priority;
            this.deadline = deadline;
        }

        boolean isOverdue(long now) {
            return now > deadline;
        }

        boolean canRetry(int maxAttempts) {
            return attempts < maxAttempts;
        }
    }

    private final PriorityQueue<Task> queue =
            new PriorityQueue<>(Comparator.comparingInt((Task t) -> -t.priority));
    private final int maxSize;
    private long clock;

    public TaskQueue(int maxSize) {
        this.maxSize = maxSize;
    }

    public boolean submit(Task t) {
        if (queue.size() >= maxSize) {
            return false;
        }
        queue.add(t);
        return true;
    }

    public Task take() {
        Task t = queue.poll();
        if (t != null && t.isOverdue(clock)) {
            return take();
        }
        return t;
    }

    public void tick(long delta) {
        assert delta > 0 : "time must move forward";
        clock += delta;
    }

    public int purgeOverdue() {
        List<Task> keep = new ArrayList<>();
        int purged = 0;
        while (!queue.isEmpty()) {
            Task t = queue.poll();
            if (t.deadline < clock) {
                purged++;
            } else {
                keep.add(t);
            }
        }
        queue.addAll(keep);
        return purged;
    }

    public boolean retry(Task t, int maxAttempts) {
        t.attempts++;
        if (t.canRetry(maxAttempts)) {
            return submit(t);
        }
        return false;
    }

    public long backoff(int attempt) {
        long delay = 100;
        for (int i = 1; i < attempt && delay < 60_000; i++) {
            delay *= 2;
        }
        return delay;
    }

    public int highPriorityCount(int cutoff) {
        int n = 0;
        for (Task t : queue) {
            if (t.priority >= cutoff) n++;
        }
        return n;
    }

    public String status() {
        String level = queue.size() > maxSize / 2 ? "busy" : "idle";
        return level + " " + queue.size() + "/" + maxSize;
    }

    public Task newTask(String name, int priority) {
        return new Task(name, priority > 10 ? 10 : priority, clock + 1000);
    }

    public List<String> names() {
        List<String> out = new ArrayList<>();
        for (Task t : queue) out.add(t.name);
        return out;
    }

    public boolean isSaturated() {
        boolean saturated;
        saturated = queue.size() >= maxSize;
        return saturated;
    }

    public Task makeUrgent(String name) {
        return new Task(name, 1, clock + (clock < 1000 ? 10 : 100));
    }

    public void logIfLate(Task t) {
        System.out.println(t.name + " late=" + (t.deadline <= clock));
    }
}
