"""Spectrum cache: atomic JSON persistence keyed by the search parameters.

Document schema:

    {"p": 3, "N": 2, "traceBound": 20, "boxBound": 50,
     "entries": [{"absTrace": 6, "length": 3.52...,
                  "witnesses": [[a, b, c, d], ...]}, ...]}

Loads re-validate every witness (determinant, congruence, trace), so a
corrupt or tampered file raises CacheInvalidError and the caller
recomputes.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .errors import CacheInvalidError
from .fuchsian import (FuchsianParams, GroupElement, LengthSpectrum,
                       SpectrumEntry, enumerate_level_elements)


def atomic_write_text(path: Path | str, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see a
    partial file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def spectrum_to_dict(spectrum: LengthSpectrum) -> dict:
    return {
        "p": spectrum.p,
        "N": spectrum.N,
        "traceBound": spectrum.trace_bound,
        "boxBound": spectrum.box_bound,
        "entries": [
            {
                "absTrace": entry.abs_trace,
                "length": entry.length,
                "witnesses": [list(w.tuple()) for w in entry.witnesses],
            }
            for entry in spectrum.entries
        ],
    }


def spectrum_from_dict(doc: dict) -> LengthSpectrum:
    try:
        p = int(doc["p"])
        n = int(doc["N"])
        entries = []
        for raw in doc["entries"]:
            witnesses = tuple(
                GroupElement(int(a), int(b), int(c), int(d), p)
                for a, b, c, d in raw["witnesses"]
            )
            entries.append(SpectrumEntry(
                abs_trace=int(raw["absTrace"]),
                length=float(raw["length"]),
                witnesses=witnesses,
            ))
        spectrum = LengthSpectrum(
            p=p, N=n,
            trace_bound=int(doc["traceBound"]),
            box_bound=int(doc["boxBound"]),
            entries=tuple(entries),
        )
        spectrum.validate_witnesses()
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheInvalidError(f"spectrum document rejected: {exc}") from exc
    return spectrum


def save_spectrum(spectrum: LengthSpectrum, path: Path | str) -> None:
    atomic_write_text(path, json.dumps(spectrum_to_dict(spectrum),
                                       sort_keys=True, indent=1) + "\n")


def load_spectrum(path: Path | str) -> LengthSpectrum:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CacheInvalidError(f"cannot read cache file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheInvalidError(f"cache file {path} is not valid JSON") from exc
    if not isinstance(doc, dict):
        raise CacheInvalidError(f"cache file {path} has no top-level object")
    return spectrum_from_dict(doc)


def cache_roundtrip(spectrum: LengthSpectrum, path: Path | str) -> LengthSpectrum:
    """Write then re-read a spectrum; the result compares equal."""
    save_spectrum(spectrum, path)
    return load_spectrum(path)


def cache_key(p: int, n: int, trace_bound: int, box_bound: int) -> str:
    return f"spectrum_p{p}_N{n}_tb{trace_bound}_box{box_bound}.json"


def cached_enumerate(params: FuchsianParams, n: int, trace_bound: int,
                     box_bound: int, cache_dir: Path | str
                     ) -> tuple[LengthSpectrum, bool]:
    """Load a matching cached spectrum if present and valid; otherwise
    recompute and (re)write it.  Returns (spectrum, cache_hit)."""
    path = Path(cache_dir) / cache_key(params.p, n, trace_bound, box_bound)
    if path.exists():
        try:
            spectrum = load_spectrum(path)
            if (spectrum.p, spectrum.N, spectrum.trace_bound,
                    spectrum.box_bound) == (params.p, n, trace_bound, box_bound):
                return spectrum, True
        except CacheInvalidError:
            pass
    spectrum = enumerate_level_elements(params, n, trace_bound, box_bound)
    save_spectrum(spectrum, path)
    return spectrum, False
