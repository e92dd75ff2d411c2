"""Praat TextGrid (long text format) reading and writing for phone tiers."""

from __future__ import annotations

import re

from .alignment import AlignmentTrack, PhoneInterval
from .errors import ParseError
from .lexicon.phones import parse_label

_KV = re.compile(r'^\s*(?P<key>[A-Za-z_]+)\s*=\s*(?P<value>.*?)\s*$')
_ITEM = re.compile(r"^\s*item\s*\[\s*(\d*)\s*\]\s*:?\s*$")
_INTERVAL = re.compile(r"^\s*intervals\s*\[\s*(\d+)\s*\]\s*:?\s*$")
_POINT = re.compile(r"^\s*points\s*\[\s*(\d+)\s*\]\s*:?\s*$")


def _unquote(value: str, lineno: int) -> str:
    if len(value) < 2 or value[0] != '"' or value[-1] != '"':
        raise ParseError(f"expected a quoted string, got {value!r}", line=lineno)
    return value[1:-1].replace('""', '"')


def _number(value: str, lineno: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"expected a number, got {value!r}", line=lineno) from None


def _read_tiers(text: str) -> list[dict]:
    lines = text.splitlines()
    if not any(_KV.match(l) and _KV.match(l).group("key") == "xmin" for l in lines):
        raise ParseError("only the long TextGrid text format is supported (short format detected)")
    tiers: list[dict] = []
    tier = None
    interval = None
    for lineno, line in enumerate(lines, start=1):
        if _ITEM.match(line):
            if _ITEM.match(line).group(1) == "":
                continue  # "item []:" header
            tier = {"line": lineno, "intervals": []}
            tiers.append(tier)
            interval = None
            continue
        if tier is None:
            continue
        m = _INTERVAL.match(line)
        if m:
            interval = {"index": int(m.group(1)), "line": lineno}
            tier["intervals"].append(interval)
            continue
        if _POINT.match(line):
            interval = {"index": None, "line": lineno}  # point tiers are ignored
            continue
        kv = _KV.match(line)
        if not kv:
            continue
        key, value = kv.group("key"), kv.group("value")
        target = interval if interval is not None else tier
        if key in ("class", "name", "text"):
            target[key] = _unquote(value, lineno)
        elif key in ("xmin", "xmax"):
            target[key] = _number(value, lineno)
            target[key + "_line"] = lineno
    return tiers


def parse_textgrid(text: str, tier_name: str = "phones") -> AlignmentTrack:
    """Read the interval tier ``tier_name``.

    Empty labels and ``sp``/``sil`` become silence; the track lasts until the
    tier's xmax.
    """
    tiers = _read_tiers(text)
    tier = next((t for t in tiers if t.get("name") == tier_name), None)
    if tier is None:
        names = [t.get("name") for t in tiers]
        raise ParseError(f"no tier named {tier_name!r} (found {names})")
    if tier.get("class") != "IntervalTier":
        raise ParseError(f"tier {tier_name!r} is a {tier.get('class')}, not an IntervalTier", line=tier["line"])
    if "xmax" not in tier:
        raise ParseError(f"tier {tier_name!r} has no xmax", line=tier["line"])

    intervals = []
    prev_end = None
    for iv in tier["intervals"]:
        k, lineno = iv["index"], iv["line"]
        if "xmin" not in iv or "xmax" not in iv or "text" not in iv:
            raise ParseError(f"interval {k}: incomplete (needs xmin, xmax, text)", line=lineno)
        xmin, xmax = iv["xmin"], iv["xmax"]
        if xmax < xmin:
            raise ParseError(f"interval {k}: xmax<xmin", line=lineno)
        if xmax == xmin:
            raise ParseError(f"interval {k}: xmax==xmin", line=lineno)
        if xmin < 0:
            raise ParseError(f"interval {k}: negative xmin", line=lineno)
        if prev_end is not None and xmin < prev_end - 1e-9:
            raise ParseError(f"interval {k}: unsorted or overlapping (xmin {xmin} < previous xmax {prev_end})", line=lineno)
        prev_end = xmax
        try:
            phone = parse_label(iv["text"])
        except ParseError as exc:
            raise ParseError(f"interval {k}: {exc}", line=lineno) from None
        intervals.append(PhoneInterval(phone, xmin, xmax))
    if intervals and intervals[-1].end > tier["xmax"] + 1e-9:
        raise ParseError(f"tier {tier_name!r}: intervals run past tier xmax {tier['xmax']}", line=tier["line"])
    return AlignmentTrack(tuple(intervals), tier["xmax"])


def _fmt(x: float) -> str:
    return repr(float(x))


def serialize_textgrid(track: AlignmentTrack, tier_name: str = "phones") -> str:
    """Write a single-tier long-format TextGrid. Silence is written as an empty label."""
    xmax = _fmt(track.total_duration)
    out = [
        'File type = "ooTextFile"',
        'Object class = "TextGrid"',
        "",
        "xmin = 0.0",
        f"xmax = {xmax}",
        "tiers? <exists>",
        "size = 1",
        "item []:",
        "    item [1]:",
        '        class = "IntervalTier"',
        f'        name = "{tier_name}"',
        "        xmin = 0.0",
        f"        xmax = {xmax}",
        f"        intervals: size = {len(track.intervals)}",
    ]
    for k, iv in enumerate(track.intervals, start=1):
        label = "" if iv.phone.is_silence else iv.phone.label
        out += [
            f"        intervals [{k}]:",
            f"            xmin = {_fmt(iv.start)}",
            f"            xmax = {_fmt(iv.end)}",
            f'            text = "{label}"',
        ]
    return "\n".join(out) + "\n"
