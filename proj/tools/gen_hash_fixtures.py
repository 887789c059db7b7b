#!/usr/bin/env python3
"""Regenerate tests/fixtures/java_hashcodes.tsv using a real Java runtime.

The sandbox ships a JRE without javac, so the helper class is assembled
directly as a class file (version 49, which needs no StackMapTable). It reads
UTF-8 lines from stdin and prints String.hashCode() for each.

Usage: gen_hash_fixtures.py <path-to-java> > tests/fixtures/java_hashcodes.tsv
"""
import struct
import subprocess
import sys
import tempfile
from pathlib import Path

INPUTS = [
    "", "a", "Ab", "b", "z", "A", "0", " ", "ab", "ba", "abc", "hello", "Hello",
    "hello world", "java", "Java", "hashCode", "polygenelubricants",
    "Aa", "BB", "AaAa", "BBBB", "AaBB", "BBAa",
    "NameExpr^BinaryExpr_IntegerLiteralExpr",
    "NameExpr^BinaryExpr_NameExpr",
    "NameExpr^BinaryExpr^ForStmt_VariableDeclarationExpr_VariableDeclarator_NameExpr",
    "SimpleName^MethodDeclaration_Parameter_SimpleName",
    "PrimitiveType^Parameter^MethodDeclaration_BlockStmt_ReturnStmt_NameExpr",
    "MethodCallExpr^BinaryExpr_NameExpr",
    "IntegerLiteralExpr^VariableDeclarator^VariableDeclarationExpr^ForStmt_BinaryExpr_NameExpr",
    "ClassOrInterfaceType^Parameter^MethodDeclaration_SimpleName",
    "contents|after", "i", "STR", "PAD", "UNK", "size", "get",
    "x" * 10, "x" * 100, "abcdefghijklmnopqrstuvwxyz", "ABCDEFGHIJKLMNOPQRSTUVWXYZ",
    "0123456789", "~!@#$%^&*()_+", "a\tb", "{}[]<>=",
    "é", "café", "üöä", "日本語",
    "Жж", "\U0001F600", "a\U0001F600b", "\U00010348", "￿",
    " ", "The quick brown fox jumps over the lazy dog",
    "for (int i = 0; i < n; i++)", "i <= contentsAfter.size()",
    "zzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzzz",
]


class Pool:
    def __init__(self):
        self.entries = []
        self.index = {}

    def _add(self, key, blob):
        if key in self.index:
            return self.index[key]
        self.entries.append(blob)
        self.index[key] = len(self.entries)
        return self.index[key]

    def utf8(self, s):
        b = s.encode("utf-8")
        return self._add(("utf8", s), b"\x01" + struct.pack(">H", len(b)) + b)

    def cls(self, name):
        n = self.utf8(name)
        return self._add(("class", name), b"\x07" + struct.pack(">H", n))

    def string(self, s):
        n = self.utf8(s)
        return self._add(("string", s), b"\x08" + struct.pack(">H", n))

    def nat(self, name, desc):
        a, b = self.utf8(name), self.utf8(desc)
        return self._add(("nat", name, desc), b"\x0c" + struct.pack(">HH", a, b))

    def field(self, owner, name, desc):
        c, nt = self.cls(owner), self.nat(name, desc)
        return self._add(("field", owner, name, desc), b"\x09" + struct.pack(">HH", c, nt))

    def method(self, owner, name, desc):
        c, nt = self.cls(owner), self.nat(name, desc)
        return self._add(("method", owner, name, desc), b"\x0a" + struct.pack(">HH", c, nt))

    def blob(self):
        return struct.pack(">H", len(self.entries) + 1) + b"".join(self.entries)


def build_class():
    p = Pool()
    this_cls = p.cls("HashFixtures")
    super_cls = p.cls("java/lang/Object")
    br = p.cls("java/io/BufferedReader")
    isr = p.cls("java/io/InputStreamReader")
    sys_in = p.field("java/lang/System", "in", "Ljava/io/InputStream;")
    sys_out = p.field("java/lang/System", "out", "Ljava/io/PrintStream;")
    utf8 = p.string("UTF-8")
    isr_init = p.method("java/io/InputStreamReader", "<init>", "(Ljava/io/InputStream;Ljava/lang/String;)V")
    br_init = p.method("java/io/BufferedReader", "<init>", "(Ljava/io/Reader;)V")
    read_line = p.method("java/io/BufferedReader", "readLine", "()Ljava/lang/String;")
    hash_code = p.method("java/lang/String", "hashCode", "()I")
    println = p.method("java/io/PrintStream", "println", "(I)V")
    main_name = p.utf8("main")
    main_desc = p.utf8("([Ljava/lang/String;)V")
    code_attr = p.utf8("Code")
    assert utf8 < 256

    code = b"".join([
        b"\xbb" + struct.pack(">H", br), b"\x59",
        b"\xbb" + struct.pack(">H", isr), b"\x59",
        b"\xb2" + struct.pack(">H", sys_in),
        b"\x12" + bytes([utf8]),
        b"\xb7" + struct.pack(">H", isr_init),
        b"\xb7" + struct.pack(">H", br_init),
        b"\x4c",                                   # 19 astore_1
        b"\x2b",                                   # 20 aload_1
        b"\xb6" + struct.pack(">H", read_line),    # 21
        b"\x4d",                                   # 24 astore_2
        b"\x2c",                                   # 25 aload_2
        b"\xc6" + struct.pack(">h", 16),           # 26 ifnull -> 42
        b"\xb2" + struct.pack(">H", sys_out),      # 29
        b"\x2c",                                   # 32
        b"\xb6" + struct.pack(">H", hash_code),    # 33
        b"\xb6" + struct.pack(">H", println),      # 36
        b"\xa7" + struct.pack(">h", -19),          # 39 goto 20
        b"\xb1",                                   # 42 return
    ])
    assert len(code) == 43
    code_body = struct.pack(">HHI", 6, 3, len(code)) + code + struct.pack(">HH", 0, 0)
    method = struct.pack(">HHHH", 0x0009, main_name, main_desc, 1)
    method += struct.pack(">HI", code_attr, len(code_body)) + code_body

    out = b"\xca\xfe\xba\xbe" + struct.pack(">HH", 0, 49)
    out += p.blob()
    out += struct.pack(">HHHHH", 0x0021, this_cls, super_cls, 0, 0)
    out += struct.pack(">H", 1) + method
    out += struct.pack(">H", 0)
    return out


def main():
    java = sys.argv[1] if len(sys.argv) > 1 else "java"
    with tempfile.TemporaryDirectory() as tmp:
        Path(tmp, "HashFixtures.class").write_bytes(build_class())
        stdin = "".join(s + "\n" for s in INPUTS).encode("utf-8")
        res = subprocess.run([java, "-cp", tmp, "HashFixtures"], input=stdin,
                             capture_output=True, check=True)
    hashes = res.stdout.decode().split()
    assert len(hashes) == len(INPUTS), res.stderr.decode()
    out = sys.stdout.buffer
    out.write(b"# String.hashCode() values from: " + subprocess.run(
        [java, "-version"], capture_output=True).stderr.decode().splitlines()[0].encode() + b"\n")
    out.write(b"# columns: hex(utf-8 bytes)<TAB>hash\n")
    for s, h in zip(INPUTS, hashes):
        out.write(s.encode("utf-8").hex().encode() + b"\t" + h.encode() + b"\n")


if __name__ == "__main__":
    main()
