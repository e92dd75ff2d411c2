"""Text to talking-head pose sequences via a phoneme-pose dictionary."""

from .alignment import (
    AlignmentTrack,
    DurationTable,
    FrameEvent,
    FrameTimeline,
    PhoneInterval,
    parse_alignment_json,
    synthesize_durations,
    to_frame_timeline,
)
from .errors import (
    ConfigError,
    DataError,
    ExportError,
    InvalidSyllableError,
    MissingPhoneError,
    OOVError,
    ParseError,
    PosePipeError,
)
from .keypoints import KeypointFrame, PoseSequence, parse_openpose_frame
from .lexicon import PhoneUnit, normalize_text, parse_pronouncing_dict, segment_pinyin, transcribe
from .posedict import PhonemePoseDictionary, build_dictionary, coverage_report, lookup
from .synth import (
    OutputSequence,
    SynthConfig,
    interpolate_gaps,
    place_key_poses,
    run_pipeline,
    select_key_poses,
    smooth_sequence,
    synthesize,
)
from .textgrid import parse_textgrid, serialize_textgrid

__version__ = "0.1.0"

__all__ = [
    "AlignmentTrack",
    "DurationTable",
    "FrameEvent",
    "FrameTimeline",
    "PhoneInterval",
    "parse_alignment_json",
    "synthesize_durations",
    "to_frame_timeline",
    "ConfigError",
    "DataError",
    "ExportError",
    "InvalidSyllableError",
    "MissingPhoneError",
    "OOVError",
    "ParseError",
    "PosePipeError",
    "KeypointFrame",
    "PoseSequence",
    "parse_openpose_frame",
    "PhoneUnit",
    "normalize_text",
    "parse_pronouncing_dict",
    "segment_pinyin",
    "transcribe",
    "PhonemePoseDictionary",
    "build_dictionary",
    "coverage_report",
    "lookup",
    "OutputSequence",
    "SynthConfig",
    "interpolate_gaps",
    "place_key_poses",
    "run_pipeline",
    "select_key_poses",
    "smooth_sequence",
    "synthesize",
    "parse_textgrid",
    "serialize_textgrid",
]
