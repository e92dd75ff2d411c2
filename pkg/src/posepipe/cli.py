"""Command-line front end.

Exit codes: 0 success, 2 usage/config, 3 data (OOV, missing phone, bad
input file), 4 I/O failure while writing outputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .alignment import parse_alignment_json
from .errors import ConfigError, DataError, ExportError, ParseError, PosePipeError
from .keypoints import load_keypoint_dir
from .lexicon import arpabet_inventory, load_bundled_lexicon, parse_pronouncing_dict, pinyin_inventory
from .metrics import eval_metrics
from .posedict import build_dictionary, coverage_report, dictionary_from_json, dictionary_to_json
from .render import export_frames, write_pose_json
from .synth import SynthConfig, run_pipeline
from .textgrid import parse_textgrid

log = logging.getLogger("posepipe")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _read_input(path) -> str:
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"input file not found: {path}")
    return path.read_text(encoding="utf-8")


def load_config(path) -> SynthConfig:
    if path is None:
        return SynthConfig()
    return SynthConfig.from_json(_read_input(path))


def load_alignment(path, tier: str = "phones"):
    text = _read_input(path)
    try:
        if str(path).lower().endswith(".json"):
            return parse_alignment_json(text)
        return parse_textgrid(text, tier)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _canvas(value: str):
    try:
        w, h = (int(v) for v in value.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"canvas must look like 512x512, got {value!r}") from None
    if w <= 0 or h <= 0:
        raise argparse.ArgumentTypeError("canvas dimensions must be positive")
    return w, h


def cmd_build_dict(args) -> int:
    cfg = load_config(args.config)
    dirs, aligns = args.keypoints_dir or [], args.alignment or []
    if not dirs or len(dirs) != len(aligns):
        raise UsageError("give one --alignment per --keypoints-dir (at least one pair)")
    clips = []
    for kp_dir, align in zip(dirs, aligns):
        if not Path(kp_dir).is_dir():
            raise UsageError(f"keypoint directory not found: {kp_dir}")
        track = load_alignment(align, args.tier)
        try:
            seq = load_keypoint_dir(kp_dir, cfg.fps)
        except FileNotFoundError as exc:
            raise UsageError(str(exc)) from None
        clips.append((str(kp_dir), seq, track))
    d = build_dictionary(clips, cfg.pose_width, cfg.fps)
    out = Path(args.out)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(dictionary_to_json(d), encoding="utf-8")
    except OSError as exc:
        raise ExportError(out, exc) from exc
    inventory = {"arpabet": arpabet_inventory(), "pinyin": pinyin_inventory()}.get(args.inventory)
    print(f"wrote {len(d)} snippets to {out}")
    if inventory is not None:
        print(coverage_report(d, inventory).format())
    return EXIT_OK


def cmd_synth(args) -> int:
    cfg = load_config(args.config)
    if args.text is None and args.pinyin is None and args.alignment is None:
        raise UsageError("need --text, --pinyin or --alignment")
    try:
        d = dictionary_from_json(_read_input(args.dict))
    except ParseError as exc:
        raise ParseError(f"{args.dict}: {exc}") from None
    lexicon = None
    if args.text is not None:
        lexicon = parse_pronouncing_dict(_read_input(args.lexicon)) if args.lexicon else load_bundled_lexicon()
    alignment = load_alignment(args.alignment, args.tier) if args.alignment else None

    run = run_pipeline(
        d, cfg, text=args.text, pinyin=args.pinyin, lexicon=lexicon,
        alignment=alignment, speaking_rate=args.speaking_rate,
    )
    report = eval_metrics(run.sequence, run.timeline, run.kept, run.timing)

    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ExportError(out, exc) from exc
    write_pose_json(run.sequence, out / "poses.json")
    n = 0 if args.no_frames else export_frames(run.sequence, out / "frames", args.canvas)
    doc = report.to_dict()
    doc.update(frames=len(run.sequence), key_poses=len(run.placed), kept_key_poses=len(run.kept),
               jitter_unsmoothed=eval_metrics(run.unsmoothed, run.timeline, run.kept).jitter)
    try:
        (out / "report.json").write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
    except OSError as exc:
        raise ExportError(out / "report.json", exc) from exc
    print(f"{len(run.sequence)} frames ({run.timing} timing), {len(run.kept)}/{len(run.placed)} key poses kept, "
          f"{n} frames rendered to {out}")
    return EXIT_OK


def cmd_demo_corpus(args) -> int:
    from .synthetic import english_corpus, mandarin_corpus, write_clip

    out = Path(args.out_dir)
    seq, track = english_corpus(load_bundled_lexicon())
    write_clip(seq, track, out / "english")
    seq, track = mandarin_corpus()
    write_clip(seq, track, out / "mandarin")
    print(f"wrote synthetic clips to {out}/english and {out}/mandarin")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="posepipe", description="Text to talking-head pose sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-dict", help="build a phoneme-pose dictionary from keypoints + alignments")
    p.add_argument("--keypoints-dir", action="append", help="directory of OpenPose JSON frames (repeatable)")
    p.add_argument("--alignment", action="append", help="TextGrid or JSON alignment, one per --keypoints-dir")
    p.add_argument("--tier", default="phones", help="TextGrid tier holding phones")
    p.add_argument("--out", required=True, help="dictionary JSON to write")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--inventory", choices=("arpabet", "pinyin", "none"), default="arpabet",
                   help="inventory for the coverage report")
    p.set_defaults(func=cmd_build_dict)

    p = sub.add_parser("synth", help="synthesize a pose sequence")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--text", help="English text")
    src.add_argument("--pinyin", help="space separated pinyin syllables, tone digits optional")
    p.add_argument("--dict", required=True, help="dictionary JSON from build-dict")
    p.add_argument("--alignment", help="TextGrid or JSON alignment of the utterance")
    p.add_argument("--tier", default="phones")
    p.add_argument("--lexicon", help="CMU-format pronouncing dictionary (default: bundled)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--canvas", type=_canvas, default=(512, 512), help="frame size WxH")
    p.add_argument("--speaking-rate", type=float, default=1.0)
    p.add_argument("--no-frames", action="store_true", help="skip PPM rendering")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("demo-corpus", help="write synthetic English and Mandarin training clips")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_demo_corpus)
    return parser


def main(argv=None) -> int:
    level = getattr(logging, os.environ.get("POSEPIPE_LOG", "WARNING").upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ExportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PosePipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())
