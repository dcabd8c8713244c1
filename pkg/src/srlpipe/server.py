"""Curation HTTP API: browse scored/projected pairs and record quality labels.

Read-only over the pipeline artifacts; the only mutable state is the labels
TSV, appended with last-write-wins per pair id.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import quality
from .corpus_io import ROOT, AnnotatedSentence, SentencePair
from .pipeline import PipelineConfig, _out, _projected_pairs
from .quality import QualityLabel

VALID_LABELS = [label.value for label in QualityLabel]


def _sentence_payload(sent: AnnotatedSentence) -> dict:
    return {
        "id": sent.id,
        "lang": sent.lang,
        "tokens": [{"index": t.index, "form": t.form, "lemma": t.lemma,
                    "upos": t.upos, "head": t.head if t.head != ROOT else None,
                    "deprel": t.deprel} for t in sent.tokens],
        "frames": [{"frame": fr.frame_name,
                    "target": {"start": fr.target[0], "end": fr.target[1]},
                    "lu": fr.lu,
                    "elements": [{"name": fe.name, "start": fe.span[0],
                                  "end": fe.span[1], "core": fe.core}
                                 for fe in fr.elements]} for fr in sent.frames],
    }


class LabelStore:
    """Append-only TSV of pair labels; the last line per pair id wins."""

    def __init__(self, path: Path):
        self.path = path
        self._lock = threading.Lock()

    def load(self) -> dict[str, str]:
        labels: dict[str, str] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                pid, _, value = line.partition("\t")
                labels[pid] = value
        return labels

    def set(self, pair_id: str, label: str) -> None:
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(f"{pair_id}\t{label}\n")
                f.flush()

    def export(self) -> str:
        labels = self.load()
        return "".join(f"{pid}\t{value}\n" for pid, value in sorted(labels.items()))


def create_app(cfg: PipelineConfig, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="srlpipe curation")
    pairs: list[SentencePair] = _projected_pairs(cfg)
    scores: dict[str, float] = {}
    scores_path = _out(cfg, "scores.tsv")
    if scores_path.exists():
        for line in scores_path.read_text().splitlines():
            pid, s, _ = line.split("\t")
            scores[pid] = float(s)
    by_id = {pair.id: pair for pair in pairs}
    store = LabelStore(Path(cfg.labels) if cfg.labels else _out(cfg, "labels.tsv"))

    @app.get("/api/pairs")
    def list_pairs(offset: int = 0, limit: int = 50):
        labels = store.load()
        window = pairs[offset:offset + limit]
        return {
            "total": len(pairs),
            "offset": offset,
            "pairs": [{"id": p.id,
                       "source_text": " ".join(t.form for t in p.source.tokens),
                       "target_text": " ".join(t.form for t in p.target.tokens),
                       "score": scores.get(p.id),
                       "label": labels.get(p.id)} for p in window],
        }

    @app.get("/api/pairs/{pair_id}")
    def get_pair(pair_id: str):
        pair = by_id.get(pair_id)
        if pair is None:
            return JSONResponse({"error": f"unknown pair id {pair_id!r}"},
                                status_code=404)
        features = quality.extract_features(pair)
        return {
            "id": pair.id,
            "source": _sentence_payload(pair.source),
            "target": _sentence_payload(pair.target),
            "alignment": sorted([i, j] for i, j in pair.alignment),
            "features": {name: getattr(features, name)
                         for name in quality.FEATURE_NAMES},
            "score": scores.get(pair.id),
            "label": store.load().get(pair.id),
        }

    @app.post("/api/pairs/{pair_id}/label")
    def post_label(pair_id: str, body: dict):
        if pair_id not in by_id:
            return JSONResponse({"error": f"unknown pair id {pair_id!r}"},
                                status_code=404)
        label = body.get("label")
        if label not in VALID_LABELS:
            return JSONResponse(
                {"error": f"invalid label {label!r}", "valid": VALID_LABELS},
                status_code=400)
        store.set(pair_id, label)
        return {"id": pair_id, "label": label}

    @app.get("/api/export/labels")
    def export_labels():
        return PlainTextResponse(store.export(),
                                 media_type="text/tab-separated-values")

    @app.get("/api/stats")
    def label_stats():
        labels = store.load()
        distribution = {value: 0 for value in VALID_LABELS}
        for value in labels.values():
            if value in distribution:
                distribution[value] += 1
        return {"total": len(pairs), "labeled": len(labels),
                "distribution": distribution}

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def serve_curation(cfg: PipelineConfig, host: str = "127.0.0.1", port: int = 8000,
                   static_dir: str | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(cfg, static_dir=static_dir), host=host, port=port)
