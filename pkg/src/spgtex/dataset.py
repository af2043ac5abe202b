"""Corpus ingestion and feature caching.

A corpus is a directory tree with one subdirectory per texture class:

    root/
      bark/    0001.png 0002.png ...
      brick/   0001.png ...

Class label = directory name, sample id = root-relative path. All images
of a corpus must be square and share one side length; this is validated
at scan time so grid configuration errors surface before extraction.

Extracted features are cached in a JSON-lines file per (corpus, pipeline
fingerprint): a header record holding the fingerprint, then one record
per sample. Vector values are written with 17 significant digits, which
round-trips float64 exactly. A cache file is only used when its header
matches the current fingerprint exactly.
"""

from __future__ import annotations

import hashlib
import json
import logging
import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import __version__, features
from .classify import LabeledFeature
from .colorspace import INTENSITY_LEVELS, RgbImage, convert_image
from .errors import CorpusError

logger = logging.getLogger(__name__)

IMAGE_EXTENSIONS = {".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff"}

CACHE_FORMAT = "spgtex-features-v1"


@dataclass(frozen=True)
class CorpusManifest:
    root: Path
    image_side: int
    classes: tuple[tuple[str, tuple[str, ...]], ...]  # (label, sample relpaths), sorted

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def n_samples(self) -> int:
        return sum(len(paths) for _, paths in self.classes)

    def iter_samples(self) -> Iterator[tuple[str, str]]:
        """Yield (relpath, label) in deterministic manifest order."""
        for label, paths in self.classes:
            for rel in paths:
                yield rel, label


def load_rgb_image(path: Path) -> RgbImage:
    try:
        with Image.open(path) as im:
            return RgbImage(np.asarray(im.convert("RGB")))
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        raise CorpusError(f"cannot decode {path}: {exc}") from exc


def scan_corpus(root: Path | str) -> CorpusManifest:
    """Walk a class-per-directory tree into a deterministic manifest."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root {root} is not a directory")

    classes = []
    sizes: dict[str, tuple[int, int]] = {}
    for class_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        rel_paths = []
        for entry in sorted(class_dir.iterdir()):
            if not entry.is_file():
                continue
            if entry.suffix.lower() not in IMAGE_EXTENSIONS:
                logger.warning("ignoring non-image file %s", entry)
                continue
            rel = entry.relative_to(root).as_posix()
            try:
                with Image.open(entry) as im:
                    sizes[rel] = (im.width, im.height)
            except (OSError, UnidentifiedImageError) as exc:
                raise CorpusError(f"unreadable image {entry}: {exc}") from exc
            rel_paths.append(rel)
        if rel_paths:
            classes.append((class_dir.name, tuple(rel_paths)))

    if not classes:
        raise CorpusError(f"no classes found under {root}")

    side_counts: dict[tuple[int, int], int] = {}
    for size in sizes.values():
        side_counts[size] = side_counts.get(size, 0) + 1
    majority = max(side_counts, key=lambda k: side_counts[k])
    offenders = [
        f"{rel} is {w}x{h}"
        for rel, (w, h) in sizes.items()
        if (w, h) != majority or w != h
    ]
    if majority[0] != majority[1]:
        offenders.insert(0, f"corpus images are {majority[0]}x{majority[1]}, not square")
    if offenders:
        shown = "; ".join(sorted(offenders)[:10])
        more = len(offenders) - 10
        if more > 0:
            shown += f"; and {more} more"
        raise CorpusError(f"inconsistent image sizes in {root}: {shown}")

    return CorpusManifest(root=root, image_side=majority[0], classes=tuple(classes))


def pipeline_fingerprint(scales: Sequence[int]) -> dict:
    """Everything the feature values depend on; cache hits require an exact match."""
    return {
        "format": CACHE_FORMAT,
        "version": __version__,
        "scales": list(int(r) for r in scales),
        "intensity_levels": INTENSITY_LEVELS,
        "quantization": "half-up",
        "color_model": "geometric-hsi",
        "endpoint_rule": "mid-floor",
        "sigma": "population",
    }


def fingerprint_hash(fingerprint: dict) -> str:
    canonical = json.dumps(fingerprint, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def _format_values(values: np.ndarray) -> str:
    return "[" + ",".join(format(v, ".17g") for v in values) + "]"


class FeatureCache:
    """JSON-lines feature store under one directory, one file per fingerprint."""

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)

    def path_for(self, fingerprint: dict) -> Path:
        return self.directory / f"features_{fingerprint_hash(fingerprint)}.jsonl"

    def load(self, fingerprint: dict) -> dict[str, tuple[str, np.ndarray]]:
        """id -> (label, vector) for a matching cache file; {} otherwise."""
        path = self.path_for(fingerprint)
        if not path.is_file():
            return {}
        entries: dict[str, tuple[str, np.ndarray]] = {}
        with path.open() as fh:
            header_line = fh.readline()
            if not header_line:
                return {}
            try:
                header = json.loads(header_line)
            except json.JSONDecodeError:
                logger.warning("discarding unreadable cache header in %s", path)
                return {}
            if header != {"kind": "header", **fingerprint}:
                logger.warning("discarding cache %s: fingerprint mismatch", path)
                return {}
            for line in fh:
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    logger.warning("discarding cache %s: corrupt record", path)
                    return {}
                entries[rec["id"]] = (rec["label"], np.asarray(rec["values"], dtype=np.float64))
        return entries

    def write(self, fingerprint: dict, feats: Sequence[LabeledFeature]) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(fingerprint)
        tmp = path.with_suffix(".tmp")
        with tmp.open("w") as fh:
            fh.write(json.dumps({"kind": "header", **fingerprint}, sort_keys=True) + "\n")
            for f in feats:
                rec_id = json.dumps(f.id)
                rec_label = json.dumps(f.label)
                fh.write(
                    f'{{"id": {rec_id}, "label": {rec_label}, '
                    f'"values": {_format_values(f.vector)}}}\n'
                )
        os.replace(tmp, path)
        return path


@dataclass
class ExtractStats:
    computed: int = 0
    cache_hits: int = 0
    skipped: int = 0
    elapsed_s: float = 0.0


def _extract_one(args: tuple[str, str, tuple[int, ...]]) -> np.ndarray:
    root, rel, scales = args
    img = load_rgb_image(Path(root) / rel)
    return features.extract_multiscale(convert_image(img), scales)


def extract_corpus(
    manifest: CorpusManifest,
    scales: Sequence[int],
    cache: FeatureCache | None = None,
    workers: int = 1,
    skip_bad: bool = False,
) -> tuple[list[LabeledFeature], ExtractStats]:
    """One multi-scale feature vector per sample, in manifest order.

    Cache entries are reused when the pipeline fingerprint matches; fresh
    results are written back. Decode failures abort with a CorpusError
    naming every bad file unless ``skip_bad`` is set, in which case the
    samples are dropped with a warning.
    """
    started = time.perf_counter()
    scales = tuple(int(r) for r in scales)
    fingerprint = pipeline_fingerprint(scales)
    cached = cache.load(fingerprint) if cache is not None else {}

    order = list(manifest.iter_samples())
    stats = ExtractStats()
    results: dict[str, LabeledFeature] = {}
    misses: list[tuple[str, str]] = []
    for rel, label in order:
        hit = cached.get(rel)
        if hit is not None and hit[0] == label:
            results[rel] = LabeledFeature(id=rel, label=label, vector=hit[1])
            stats.cache_hits += 1
        else:
            misses.append((rel, label))

    failures: list[str] = []
    if misses:
        tasks = [(str(manifest.root), rel, scales) for rel, _ in misses]
        if workers > 1:
            features.warm_up()  # compile kernels once, pre-fork
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
                outcomes = list(pool.map(_extract_one_safe, tasks, chunksize=8))
        else:
            outcomes = [_extract_one_safe(t) for t in tasks]
        for (rel, label), (vector, error) in zip(misses, outcomes):
            if error is not None:
                failures.append(error)
                continue
            results[rel] = LabeledFeature(id=rel, label=label, vector=vector)
            stats.computed += 1

    if failures:
        if not skip_bad:
            raise CorpusError("; ".join(failures))
        for msg in failures:
            logger.warning("skipping sample: %s", msg)
        stats.skipped = len(failures)

    ordered = [results[rel] for rel, _ in order if rel in results]
    if cache is not None and stats.computed:
        cache.write(fingerprint, ordered)
    stats.elapsed_s = time.perf_counter() - started
    return ordered, stats


def _extract_one_safe(args: tuple[str, str, tuple[int, ...]]):
    try:
        return _extract_one(args), None
    except CorpusError as exc:
        return None, str(exc)
