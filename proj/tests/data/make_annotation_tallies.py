#!/usr/bin/env python3
"""Regenerates annotation_tallies.jsonl, a two-annotator MQM/SQM bundle with
fixed per-annotator and per-category error counts."""
import json
import random
import sys

SEGMENTS = 25
SYSTEM = "tuned-mllm"

# category -> (annotator 1 count, annotator 2 count)
SPLITS = {
    "en2ga": {
        "Addition": (5, 7),
        "Omission": (6, 8),
        "Mistranslation": (12, 20),
        "Untranslated text": (4, 5),
        "Punctuation": (5, 5),
        "Spelling": (2, 4),
        "Grammar": (11, 16),
        "Register": (6, 13),
        "Inconsistency": (2, 4),
    },
    "ga2en": {
        "Addition": (2, 3),
        "Omission": (1, 2),
        "Mistranslation": (2, 4),
        "Untranslated text": (1, 1),
        "Register": (1, 1),
    },
}
# Sum of all 50 SQM ratings per direction.
SQM_SUMS = {"en2ga": 219, "ga2en": 281}
# Categories both annotators flag on identical segments.
SHARED = {"en2ga": {"Punctuation"}}


def sqm_ratings(rng, total, n):
    ratings = [total // n] * n
    for i in range(total - sum(ratings)):
        ratings[i] += 1
    # Spread without changing the sum or leaving 0..6.
    for _ in range(200):
        a, b = rng.randrange(n), rng.randrange(n)
        if ratings[a] < 6 and ratings[b] > 0 and a != b:
            ratings[a] += 1
            ratings[b] -= 1
    return ratings


def main(out_path):
    rng = random.Random(2023)
    lines = []
    for direction, splits in SPLITS.items():
        errors = {(a, s): [] for a in ("A1", "A2") for s in range(SEGMENTS)}
        for category, (n1, n2) in splits.items():
            if category in SHARED.get(direction, set()):
                segs = rng.sample(range(SEGMENTS), n1)
                placements = {"A1": segs, "A2": segs}
            else:
                placements = {
                    "A1": [rng.randrange(SEGMENTS) for _ in range(n1)],
                    "A2": [rng.randrange(SEGMENTS) for _ in range(n2)],
                }
            for annotator, segs in placements.items():
                for s in segs:
                    severity = "major" if rng.random() < 0.3 else "minor"
                    errors[(annotator, s)].append({"category": category, "severity": severity})
        ratings = sqm_ratings(rng, SQM_SUMS[direction], 2 * SEGMENTS)
        k = 0
        for annotator in ("A1", "A2"):
            for s in range(SEGMENTS):
                lines.append(json.dumps({
                    "segment_id": f"{direction}-{s + 1:02d}",
                    "annotator_id": annotator,
                    "system_id": SYSTEM,
                    "direction": direction,
                    "sqm": ratings[k],
                    "errors": errors[(annotator, s)],
                }, ensure_ascii=False))
                k += 1
    with open(out_path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "annotation_tallies.jsonl")
