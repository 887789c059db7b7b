package text;

import java.util.ArrayList;
import java.util.List;

public class Tokenizer {
    private final String input;
    private int pos;

    public Tokenizer(String input) {
        this.input = input;
    }

    public boolean hasNext() {
        skipSpaces();
        return pos < input.length();
    }

    private void skipSpaces() {
        while (pos < input.length() && input.charAt(pos) == ' ') {
            pos++;
        }
    }

    public String next() {
        skipSpaces();
        int start = pos;
        while (pos < input.length() && input.charAt(pos) != ' ') {
            pos++;
        }
        if (pos <= start) {
            throw new IllegalStateException("no token at " + pos);
        }
        return input.substring(start, pos);
    }

    public List<String> all() {
        List<String> out = new ArrayList<>();
        while (hasNext()) out.add(next());
        return out;
    }

    public char peek() {
        return pos < input.length() ? input.charAt(pos) : '\0';
    }

    public int remainingChars() {
        int r = input.length() - pos;
        return r;
    }

    public void rewind(int n) {
        pos = Math.max(0, pos - n);
        assert pos >= 0;
    }

    public boolean atEnd() {
        return pos >= input.length();
    }

    public String lineAt(int offset) {
        int s = offset, e = offset;
        while (s > 0 && input.charAt(s - 1) != '\n') s--;
        while (e < input.length() && input.charAt(e) != '\n') e++;
        return input.substring(s, e);
    }

    public int column() {
        int col = 0;
        for (int i = pos - 1; i >= 0 && input.charAt(i) != '\n'; i--) {
            col++;
        }
        return col;
    }

    public String describeProgress() {
        return String.valueOf(pos * 100 / Math.max(1, input.length())) + "%";
    }
}
