"""Python bindings for the lda attack lab.

Transcripts and reports cross the boundary as JSON strings; the helpers
below decode them.
"""

import json

from ._lda import (
    DEFAULT_MODULUS,
    MalformedTranscriptError,
    ParseError,
    RepresentationError,
    demo,
    fixture_key,
    representation,
    selftest,
)
from ._lda import attack as attack_json
from ._lda import simulate as simulate_json


def simulate(**kwargs):
    """Run an honest exchange; returns the transcript as a dict."""
    return json.loads(simulate_json(**kwargs))


def attack(transcript, dump_bases=False):
    """Attack a transcript given as a dict or JSON string; returns the report dict."""
    text = transcript if isinstance(transcript, str) else json.dumps(transcript)
    return json.loads(attack_json(text, dump_bases))


def recovered_key(report):
    return [[int(x) for x in row] for row in report["recovered_k"]]


__all__ = [
    "DEFAULT_MODULUS",
    "MalformedTranscriptError",
    "ParseError",
    "RepresentationError",
    "attack",
    "attack_json",
    "demo",
    "fixture_key",
    "recovered_key",
    "representation",
    "selftest",
    "simulate",
    "simulate_json",
]
