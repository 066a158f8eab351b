#!/usr/bin/env python3
"""Writes the hand-crafted sample edit logs under tests/data/."""
import json
import pathlib

DAY = 86_400_000
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


class Log:
    def __init__(self, doc_id, created_at):
        self.lines = [{"doc_id": doc_id, "created_at": created_at}]
        self.t = created_at
        self.doc = ""

    def at(self, t):
        self.t = t
        return self

    def type(self, offset, text, step=150):
        for i, ch in enumerate(text):
            self.t += step
            self.lines.append({"t": self.t, "kind": "insert", "offset": offset + i, "text": ch})
        self.doc = self.doc[:offset] + text + self.doc[offset:]
        return self

    def paste(self, offset, text, step=400):
        self.t += step
        self.lines.append({"t": self.t, "kind": "insert", "offset": offset, "text": text})
        self.doc = self.doc[:offset] + text + self.doc[offset:]
        return self

    def backspace(self, cursor, count, step=120):
        for i in range(count):
            self.t += step
            self.lines.append({"t": self.t, "kind": "delete", "offset": cursor - i - 1, "length": 1})
        self.doc = self.doc[:cursor - count] + self.doc[cursor:]
        return self

    def delete(self, offset, length, step=300):
        self.t += step
        self.lines.append({"t": self.t, "kind": "delete", "offset": offset, "length": length})
        self.doc = self.doc[:offset] + self.doc[offset + length:]
        return self

    def write(self, name):
        with open(OUT / name, "w", encoding="utf-8") as f:
            for line in self.lines:
                f.write(json.dumps(line, ensure_ascii=False) + "\n")
        return self.doc


def two_paragraphs():
    log = Log("two-paragraphs", 1_600_000_000_000)
    p1 = "Seeds wait in the dark soil.\n"
    log.type(0, p1)
    # Revisit the first paragraph: drop "the ".
    log.at(log.t + 5_000).delete(p1.index("the "), 4)
    end = len(log.doc)
    log.at(log.t + 5_000).type(end, "Then rain arrives and they grow.")
    return log.write("two_paragraphs.jsonl")


def three_days():
    created = 1_600_041_600_000  # 2020-09-14T00:00:00Z
    log = Log("three-days", created)
    # Day 1: a first draft with a corrected typo.
    log.at(created + 9 * 3_600_000)
    log.type(0, "The garden grwo")
    log.backspace(15, 2)
    log.type(13, "ows slowly.")
    # Day 2: an insertion in the middle and a deleted word.
    log.at(created + DAY + 10 * 3_600_000)
    log.type(len("The "), "old ")
    log.delete(log.doc.index(" slowly"), len(" slowly"))
    log.type(log.doc.index("."), " quietly")
    # Day 3: a pasted quotation and a new closing sentence.
    log.at(created + 2 * DAY + 14 * 3_600_000)
    log.paste(len(log.doc), " “Patience is bitter, but its fruit is sweet.”")
    log.type(len(log.doc), " Nothing is wasted.")
    return log.write("three_days.jsonl")


if __name__ == "__main__":
    print(repr(two_paragraphs()))
    print(repr(three_days()))
