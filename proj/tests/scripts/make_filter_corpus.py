#!/usr/bin/env python3
"""Writes a synthetic 100-record corpus plus the ids a lines >= 20 and CC > 3
filter must keep. Metrics are recounted from the emitted text with regexes."""

import argparse
import json
import random
import re

DECISIONS = [
    (1, "  if (a > {n}) r = r + {n};"),
    (2, "  if (a > {n} && b < {m}) r = r - 1;"),
    (2, "  if (a == {n} || b == {m}) r = r ^ {n};"),
    (1, "  while (b > {n}) b = b - 1;"),
    (1, "  for (r = 0; r < {n}; r++) a = a + 1;"),
    (1, "  r = a > {n} ? r : b;"),
    (2, "  switch (a) {{ case {n}: r = 2; break; case {m}: r = 3; break; default: break; }}"),
]
FILLERS = ["  r = r + {n};", "  b = b * {n};", "  a = a - r;", "  /* step {n} */", "  r = r | (a << 1);"]


def build(idx, lines, cc, rng):
    body = []
    points = 0
    while points < cc - 1:
        w, text = rng.choice([d for d in DECISIONS if points + d[0] <= cc - 1])
        n = rng.randint(1, 9)
        body.append(text.format(n=n, m=n + 1))
        points += w
    while len(body) + 5 < lines:
        body.insert(rng.randint(0, len(body)), rng.choice(FILLERS).format(n=rng.randint(1, 9)))
    out = [f"int fn_{idx:03d}(int a, int b)", "{", "  int r = 0;"]
    for stmt in body:
        out.append(stmt)
        if rng.random() < 0.2:
            out.append(rng.choice(["", "   ", "\t"]))
    out += ["  return r;", "}"]
    return "\n".join(out) + "\n"


def effective_lines(src):
    return sum(1 for line in src.split("\n") if line.strip())


def complexity(src):
    code = re.sub(r"/\*.*?\*/", "", src, flags=re.S)
    return 1 + len(re.findall(r"\b(?:if|while|for|case)\b|&&|\|\||\?", code))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("corpus")
    ap.add_argument("expected")
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    shapes = [(lines, cc) for lines in (19, 20, 21) for cc in (3, 4, 5)]
    shapes += [(19, 9), (20, 1), (30, 3), (30, 4)]
    while len(shapes) < 100:
        cc = rng.randint(1, 8)
        shapes.append((rng.randint(max(12, cc + 5), 34), cc))
    rng.shuffle(shapes)

    kept = []
    with open(args.corpus, "w") as f:
        for idx, (lines, cc) in enumerate(shapes):
            src = build(idx, lines, cc, rng)
            assert effective_lines(src) == lines and complexity(src) == cc, (idx, lines, cc)
            rid = f"synthetic-{idx:03d}"
            rec = {"id": rid, "project": "synthetic", "original_decompiled": src,
                   "provenance": {"lines": lines, "cc": cc}}
            f.write(json.dumps(rec) + "\n")
            if effective_lines(src) >= 20 and complexity(src) > 3:
                kept.append(rid)
    with open(args.expected, "w") as f:
        f.write("\n".join(kept) + "\n")


if __name__ == "__main__":
    main()
