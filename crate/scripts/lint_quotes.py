#!/usr/bin/env python3
"""Checks that every `quote` in the claims catalogue is a verbatim excerpt.

Whitespace runs are collapsed on both sides before matching, so quotes may
join lines that are wrapped in the source text. Any other difference is an
error. Usage:

    python3 scripts/lint_quotes.py [--claims PATH] [--source PATH]
"""
import argparse
import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def collapse(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--claims", default=ROOT / "crates" / "core" / "claims.json")
    ap.add_argument("--source", default=ROOT / "paper.md")
    args = ap.parse_args()

    claims = json.loads(Path(args.claims).read_text(encoding="utf-8"))
    source = collapse(Path(args.source).read_text(encoding="utf-8"))

    bad = []
    seen = set()
    for claim in claims:
        cid = claim["id"]
        if cid in seen:
            bad.append((cid, "duplicate id"))
        seen.add(cid)
        quote = claim.get("quote", "")
        if not quote:
            bad.append((cid, "empty quote"))
            continue
        if collapse(quote) not in source:
            bad.append((cid, f"not found in source: {quote[:80]!r}"))

    if bad:
        for cid, why in bad:
            print(f"FAIL {cid}: {why}")
        print(f"{len(bad)} of {len(claims)} quotes failed")
        return 1
    print(f"ok: {len(claims)} quotes verified against {args.source}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
