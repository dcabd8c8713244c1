"""Pipeline orchestration: stage execution over plain-file artifacts.

Every stage reads its inputs from the configured paths and the output
directory, writes one artifact set plus a JSON report, and is re-runnable.
Staleness is decided by a content hash of the stage's inputs and
parameters, so copied fixtures never trigger spurious reruns.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path

from . import aligner, langid, propbank, quality
from .corpus_io import (AnnotatedSentence, SentencePair, parse_conllu,
                        parse_frames_jsonl, parse_pharaoh, read_pairs_tsv,
                        write_conll2009, write_frames_jsonl, write_pharaoh)
from .projector import ProjectedFrame, project_pair
from .propbank import MappedSentence, load_frame_index

STAGES = ("filter-lang", "align", "project", "score", "map", "split", "stats")


class ConfigError(Exception):
    pass


class StageError(Exception):
    pass


@dataclass
class PipelineConfig:
    pairs: str = ""
    src_conllu: str = ""
    tgt_conllu: str = ""
    frames: str = ""
    frame_index: str = ""
    outdir: str = "out"
    langid_model: str = ""
    classifier: str = ""
    labels: str = ""
    lang_src: str = "en"
    lang_tgt: str = "he"
    tau_lang: float = 0.5
    tau: float = 0.80
    iters: int = 5
    lam: float = 4.0
    p_null: float = 0.08
    prune: float = 1e-7
    min_tokens: int = 5
    min_depth: int = 2
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    seed: int = 0
    strict: bool = False
    dense_args: bool = True

    def validate(self) -> None:
        for name in ("tau", "tau_lang"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ConfigError(f"{name} must be in [0,1], got {v}")
        if self.lam < 0:
            raise ConfigError(f"lambda must be >= 0, got {self.lam}")
        if not (0.0 <= self.p_null < 1.0):
            raise ConfigError(f"p_null must be in [0,1), got {self.p_null}")
        if self.iters < 1:
            raise ConfigError("iters must be >= 1")
        if any(r <= 0 for r in self.ratios) or sum(self.ratios) > 1.0 + 1e-9:
            raise ConfigError(f"bad split ratios {self.ratios}")
        for name in ("pairs", "src_conllu", "tgt_conllu", "frames", "frame_index",
                     "langid_model"):
            path = getattr(self, name)
            if path and not Path(path).exists():
                raise ConfigError(f"{name} path does not exist: {path}")


_CONFIG_TYPES = {f.name: f.type for f in PipelineConfig.__dataclass_fields__.values()}


def load_config(path: str | None = None, overrides: dict | None = None,
                ) -> PipelineConfig:
    """Build a config from a flat `key = value` file plus flag overrides."""
    values: dict = {}
    if path:
        for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{line_no}: expected key = value")
            values[key.strip()] = _coerce(key.strip(), value.strip())
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    unknown = set(values) - set(_CONFIG_TYPES)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = PipelineConfig(**values)
    if isinstance(cfg.ratios, list):
        cfg.ratios = tuple(cfg.ratios)
    return cfg


def _coerce(key: str, raw: str):
    if raw.startswith('"') and raw.endswith('"'):
        return raw[1:-1]
    if key == "ratios":
        return tuple(float(x) for x in raw.strip("[]() ").split(","))
    if raw in ("true", "false"):
        return raw == "true"
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    return raw


# ---------------------------------------------------------------------------
# artifact helpers

def _out(cfg: PipelineConfig, name: str) -> Path:
    return Path(cfg.outdir) / name


def _hash_files(paths: list[Path], params: str) -> str:
    h = hashlib.sha256(params.encode())
    for path in paths:
        h.update(b"\x00")
        if path.exists():
            h.update(path.read_bytes())
    return h.hexdigest()


def _write_report(cfg: PipelineConfig, stage: str, input_hash: str,
                  counts: dict, wall_time: float, cached: bool = False) -> dict:
    report = {"stage": stage, "input_hash": input_hash, "counts": counts,
              "wall_time": wall_time, "cached": cached}
    _out(cfg, f"report_{stage.replace('-', '_')}.json").write_text(
        json.dumps(report, indent=2) + "\n")
    return report


def _load_kept_pairs(cfg: PipelineConfig) -> list[tuple[str, str, str]]:
    path = _out(cfg, "kept_pairs.tsv")
    if not path.exists():
        raise StageError("missing artifact kept_pairs.tsv; run stage filter-lang first")
    out = []
    for line in path.read_text().splitlines():
        pid, src, tgt = line.split("\t")
        out.append((pid, src, tgt))
    return out


def _load_sentences(path: str, lang: str) -> dict[str, AnnotatedSentence]:
    with open(path, encoding="utf-8") as f:
        sentences = parse_conllu(f, lang=lang)
    return {sent.id: sent for sent in sentences}


def _load_alignments(cfg: PipelineConfig,
                     pairs: list[tuple[str, AnnotatedSentence, AnnotatedSentence]],
                     ) -> dict[str, set[tuple[int, int]]]:
    path = _out(cfg, "alignments.pharaoh")
    if not path.exists():
        raise StageError("missing artifact alignments.pharaoh; run stage align first")
    lines = path.read_text().split("\n")[:-1]
    if len(lines) != len(pairs):
        raise StageError(f"alignment file has {len(lines)} lines for {len(pairs)} pairs")
    return {pid: parse_pharaoh(line, len(src.tokens), len(tgt.tokens))
            for (pid, src, tgt), line in zip(pairs, lines)}


def _aligned_corpus(cfg: PipelineConfig,
                    ) -> list[tuple[str, AnnotatedSentence, AnnotatedSentence]]:
    """Kept pairs joined with both CoNLL-U sides; pairs missing a side drop out."""
    kept = _load_kept_pairs(cfg)
    src_sents = _load_sentences(cfg.src_conllu, cfg.lang_src)
    tgt_sents = _load_sentences(cfg.tgt_conllu, cfg.lang_tgt)
    out = []
    for pid, _, _ in kept:
        if pid in src_sents and pid in tgt_sents:
            out.append((pid, src_sents[pid], tgt_sents[pid]))
        elif cfg.strict:
            raise StageError(f"pair {pid} missing from parsed corpora")
    return out


# ---------------------------------------------------------------------------
# stages

def stage_filter_lang(cfg: PipelineConfig) -> dict:
    if not cfg.langid_model:
        raise StageError("filter-lang requires a langid_model path")
    model = langid.LangIdModel.from_json(Path(cfg.langid_model).read_text())
    pairs, skipped = read_pairs_tsv(Path(cfg.pairs).read_bytes())
    kept, rejected = langid.filter_pairs(model, pairs, lang_src=cfg.lang_src,
                                         lang_tgt=cfg.lang_tgt, tau_lang=cfg.tau_lang)
    _out(cfg, "kept_pairs.tsv").write_text(
        "".join(f"{pid}\t{src}\t{tgt}\n" for pid, src, tgt in kept))
    _out(cfg, "rejections_lang.tsv").write_text(
        "".join(f"{r.pair_id}\t{r.reason}\n" for r in rejected))
    return {"input": len(pairs), "output": len(kept),
            "skipped_lines": skipped,
            "rejected": {r.reason: sum(1 for x in rejected if x.reason == r.reason)
                         for r in rejected}}


def stage_align(cfg: PipelineConfig) -> dict:
    corpus = _aligned_corpus(cfg)
    tokenized = [([t.form for t in src.tokens], [t.form for t in tgt.tokens])
                 for _, src, tgt in corpus]
    if tokenized:
        model = aligner.em_train(tokenized, iterations=cfg.iters, lam=cfg.lam,
                                 p_null=cfg.p_null, prune=cfg.prune)
        _out(cfg, "aligner_model.json").write_text(model.to_json())
        lines = [write_pharaoh(aligner.viterbi_decode(model, src, tgt))
                 for src, tgt in tokenized]
    else:
        lines = []
    _out(cfg, "alignments.pharaoh").write_text("".join(line + "\n" for line in lines))
    n_links = sum(len(line.split()) for line in lines)
    return {"input": len(corpus), "output": len(corpus), "links": n_links}


def stage_project(cfg: PipelineConfig) -> dict:
    corpus = _aligned_corpus(cfg)
    alignments = _load_alignments(cfg, corpus)
    with open(cfg.frames, encoding="utf-8") as f:
        frames_by_id, frame_errors = parse_frames_jsonl(f, strict=cfg.strict)
    projected: dict[str, list] = {}
    skip_lines = []
    skip_counts: dict[str, int] = {}
    for pid, src, tgt in corpus:
        src = AnnotatedSentence(id=src.id, lang=src.lang, tokens=src.tokens,
                                mwt=src.mwt, frames=frames_by_id.get(pid, []))
        pair = SentencePair(id=pid, source=src, target=tgt,
                            alignment=alignments[pid])
        kept_frames, skips = project_pair(pair)
        for frame_name, reason in skips:
            skip_lines.append(f"{pid}\t{frame_name}\t{reason.value}\n")
            skip_counts[reason.value] = skip_counts.get(reason.value, 0) + 1
        if kept_frames:
            projected[pid] = [fr.as_annotation() for fr in kept_frames]
    _out(cfg, "projected_frames.jsonl").write_text(write_frames_jsonl(projected))
    _out(cfg, "skips.tsv").write_text("".join(skip_lines))
    return {"input": len(corpus), "output": len(projected),
            "frame_record_errors": len(frame_errors), "skips": skip_counts}


def _projected_pairs(cfg: PipelineConfig) -> list[SentencePair]:
    path = _out(cfg, "projected_frames.jsonl")
    if not path.exists():
        raise StageError("missing artifact projected_frames.jsonl; "
                         "run stage project first")
    corpus = _aligned_corpus(cfg)
    alignments = _load_alignments(cfg, corpus)
    with open(cfg.frames, encoding="utf-8") as f:
        src_frames, _ = parse_frames_jsonl(f, strict=False)
    with open(path, encoding="utf-8") as f:
        tgt_frames, _ = parse_frames_jsonl(f, strict=True)
    pairs = []
    for pid, src, tgt in corpus:
        if pid not in tgt_frames:
            continue
        src = AnnotatedSentence(id=src.id, lang=src.lang, tokens=src.tokens,
                                mwt=src.mwt, frames=src_frames.get(pid, []))
        tgt = AnnotatedSentence(id=tgt.id, lang=tgt.lang, tokens=tgt.tokens,
                                mwt=tgt.mwt, frames=tgt_frames[pid])
        pairs.append(SentencePair(id=pid, source=src, target=tgt,
                                  alignment=alignments[pid], status="projected"))
    return pairs


def _load_classifier(cfg: PipelineConfig) -> quality.LinearClassifier:
    if cfg.classifier and Path(cfg.classifier).exists():
        return quality.LinearClassifier.from_json(Path(cfg.classifier).read_text())
    fitted = _out(cfg, "classifier.json")
    if fitted.exists():
        return quality.LinearClassifier.from_json(fitted.read_text())
    return quality.LinearClassifier.trivial()


def stage_fit_quality(cfg: PipelineConfig) -> dict:
    """Fit the quality classifier from the labels TSV over scored features."""
    labels_path = Path(cfg.labels) if cfg.labels else _out(cfg, "labels.tsv")
    if not labels_path.exists():
        raise StageError(f"labels file not found: {labels_path}")
    by_value = {label.value: label for label in quality.QualityLabel}
    labels: dict[str, quality.QualityLabel] = {}
    for line in labels_path.read_text().splitlines():
        pid, _, value = line.partition("\t")
        if value not in by_value:
            raise StageError(f"unknown quality label {value!r} for {pid}")
        labels[pid] = by_value[value]  # last write wins
    pairs = _projected_pairs(cfg)
    labeled = [(quality.extract_features(pair), labels[pair.id])
               for pair in pairs if pair.id in labels]
    clf = quality.fit(labeled, resample=True, seed=cfg.seed)
    _out(cfg, "classifier.json").write_text(clf.to_json())
    return {"input": len(labeled), "output": len(labeled)}


def stage_score(cfg: PipelineConfig) -> dict:
    pairs = _projected_pairs(cfg)
    clf = _load_classifier(cfg)
    survivors = [pair for pair in pairs
                 if quality.structural_prefilter(pair, cfg.min_tokens, cfg.min_depth)]
    score_lines = []
    kept = []
    for pair in survivors:
        pair.score = quality.score(clf, quality.extract_features(pair))
        score_lines.append(f"{pair.id}\t{pair.score:.6f}\t{len(pair.target.tokens)}\n")
    kept = quality.threshold_filter(survivors, tau=cfg.tau)
    _out(cfg, "scores.tsv").write_text("".join(score_lines))
    _out(cfg, "kept_scored.txt").write_text(
        "".join(pair.id + "\n" for pair in kept))
    return {"input": len(pairs), "output": len(kept),
            "prefilter_dropped": len(pairs) - len(survivors),
            "threshold_dropped": len(survivors) - len(kept)}


def _mapped_sentences(cfg: PipelineConfig) -> list[MappedSentence]:
    kept_path = _out(cfg, "kept_scored.txt")
    if not kept_path.exists():
        raise StageError("missing artifact kept_scored.txt; run stage score first")
    kept_ids = set(kept_path.read_text().split())
    index = load_frame_index(Path(cfg.frame_index).read_text())
    mapped = []
    for pair in _projected_pairs(cfg):
        if pair.id not in kept_ids:
            continue
        frames = [ProjectedFrame(frame_name=fr.frame_name, target_span=fr.target,
                                 elements=fr.elements, lu=fr.lu, provenance=pair.id)
                  for fr in pair.target.frames]
        mapped.append(propbank.map_sentence(pair.target, frames, index,
                                            dense=cfg.dense_args))
    return mapped


def stage_map(cfg: PipelineConfig) -> dict:
    mapped = _mapped_sentences(cfg)
    kept = propbank.core_only_filter(mapped)
    records = []
    for m in kept:
        records.append(json.dumps({
            "id": m.sentence.id,
            "instances": [{"predicate": inst.predicate, "sense": inst.sense,
                           "args": [[label, list(span)] for label, span in inst.args]}
                          for inst in m.instances]}, ensure_ascii=False))
    _out(cfg, "mapped.jsonl").write_text("".join(r + "\n" for r in records))
    rejections: dict[str, int] = {}
    for m in mapped:
        for _, reason in m.rejections:
            rejections[reason.value] = rejections.get(reason.value, 0) + 1
    return {"input": len(mapped), "output": len(kept), "rejections": rejections}


def _load_mapped(cfg: PipelineConfig) -> list[tuple[str, list[dict]]]:
    path = _out(cfg, "mapped.jsonl")
    if not path.exists():
        raise StageError("missing artifact mapped.jsonl; run stage map first")
    out = []
    for line in path.read_text().splitlines():
        rec = json.loads(line)
        out.append((rec["id"], rec["instances"]))
    return out


def stage_split(cfg: PipelineConfig) -> dict:
    from .corpus_io import PropBankInstance

    mapped = _load_mapped(cfg)
    if not mapped:
        _out(cfg, "split.json").write_text(json.dumps(
            {"train": [], "dev": [], "test": []}) + "\n")
        return {"input": 0, "output": 0}
    tgt_sents = _load_sentences(cfg.tgt_conllu, cfg.lang_tgt)
    folds = propbank.split(mapped, ratios=cfg.ratios, seed=cfg.seed)
    fold_ids = {}
    for name, fold in zip(("train", "dev", "test"), folds):
        fold_ids[name] = [pid for pid, _ in fold]
        items = []
        for pid, raw_instances in fold:
            instances = [PropBankInstance(
                predicate=ri["predicate"], sense=ri["sense"],
                args=tuple((label, (span[0], span[1])) for label, span in ri["args"]))
                for ri in raw_instances]
            items.append((tgt_sents[pid], instances))
        _out(cfg, f"{name}.conll").write_text(write_conll2009(items))
    _out(cfg, "split.json").write_text(json.dumps(fold_ids, indent=2) + "\n")
    return {"input": len(mapped), "output": len(mapped),
            "sizes": {name: len(ids) for name, ids in fold_ids.items()}}


def stage_stats(cfg: PipelineConfig) -> dict:
    split_path = _out(cfg, "split.json")
    if not split_path.exists():
        raise StageError("missing artifact split.json; run stage split first")
    fold_ids = json.loads(split_path.read_text())
    tgt_sents = _load_sentences(cfg.tgt_conllu, cfg.lang_tgt)

    header = ("fold\tn_sentences\tn_tokens_seg\tn_types_seg\tasl_seg"
              "\tn_tokens_unseg\tn_types_unseg\tasl_unseg\n")
    rows = [header]
    for name in ("train", "dev", "test"):
        stats = propbank.corpus_stats([tgt_sents[pid] for pid in fold_ids[name]])
        rows.append(f"{name}\t{stats.n_sentences}\t{stats.n_tokens_seg}"
                    f"\t{stats.n_types_seg}\t{stats.asl_seg:.4f}"
                    f"\t{stats.n_tokens_unseg}\t{stats.n_types_unseg}"
                    f"\t{stats.asl_unseg:.4f}\n")
    _out(cfg, "corpus_stats.tsv").write_text("".join(rows))

    pairs = _projected_pairs(cfg)
    frames = [ProjectedFrame(frame_name=fr.frame_name, target_span=fr.target,
                             elements=fr.elements, lu=fr.lu, provenance=pair.id)
              for pair in pairs for fr in pair.target.frames]
    frame_counts, fe_counts = propbank.frame_stats(frames)
    _out(cfg, "frame_stats.tsv").write_text(
        "".join(f"frame\t{name}\t{count}\n" for name, count in frame_counts.most_common())
        + "".join(f"fe\t{name}\t{count}\n" for name, count in fe_counts.most_common()))

    astats = aligner.alignment_stats(
        [([t.form for t in pair.source.tokens], [t.form for t in pair.target.tokens],
          pair.alignment) for pair in pairs])
    _out(cfg, "alignment_stats.json").write_text(
        json.dumps(asdict(astats), indent=2) + "\n")

    scores_path = _out(cfg, "scores.tsv")
    scored = []
    if scores_path.exists():
        for line in scores_path.read_text().splitlines():
            _, s, length = line.split("\t")
            scored.append((float(s), int(length)))
    hist = quality.score_histogram(scored, bin_width=0.1) if scored else []
    _out(cfg, "score_histogram.csv").write_text(
        "bin_lo,count,n_above,mean_len_above\n"
        + "".join(f"{r.bin_lo},{r.count},{r.n_above},{r.mean_len_above:.4f}\n"
                  for r in hist))
    return {"input": len(pairs), "output": len(pairs),
            "sentences": sum(len(ids) for ids in fold_ids.values())}


_STAGE_FUNCS = {
    "filter-lang": stage_filter_lang,
    "align": stage_align,
    "project": stage_project,
    "score": stage_score,
    "fit-quality": stage_fit_quality,
    "map": stage_map,
    "split": stage_split,
    "stats": stage_stats,
}

# files each stage depends on, for content-hash staleness
_STAGE_INPUTS = {
    "filter-lang": ["pairs", "langid_model"],
    "align": ["kept_pairs.tsv", "src_conllu", "tgt_conllu"],
    "project": ["kept_pairs.tsv", "alignments.pharaoh", "src_conllu", "tgt_conllu",
                "frames"],
    "fit-quality": ["projected_frames.jsonl", "labels"],
    "score": ["projected_frames.jsonl", "classifier.json", "src_conllu",
              "tgt_conllu", "frames"],
    "map": ["kept_scored.txt", "projected_frames.jsonl", "frame_index"],
    "split": ["mapped.jsonl", "tgt_conllu"],
    "stats": ["split.json", "scores.tsv", "projected_frames.jsonl", "tgt_conllu"],
}

_STAGE_OUTPUTS = {
    "filter-lang": ["kept_pairs.tsv", "rejections_lang.tsv"],
    "align": ["alignments.pharaoh"],
    "project": ["projected_frames.jsonl", "skips.tsv"],
    "fit-quality": ["classifier.json"],
    "score": ["scores.tsv", "kept_scored.txt"],
    "map": ["mapped.jsonl"],
    "split": ["split.json"],
    "stats": ["corpus_stats.tsv", "frame_stats.tsv", "score_histogram.csv"],
}


def _stage_hash(cfg: PipelineConfig, stage: str) -> str:
    paths = []
    for name in _STAGE_INPUTS[stage]:
        if name in PipelineConfig.__dataclass_fields__:
            value = getattr(cfg, name)
            if value:
                paths.append(Path(value))
        else:
            paths.append(_out(cfg, name))
    params = json.dumps({k: v for k, v in asdict(cfg).items()
                         if k not in ("outdir",)}, sort_keys=True, default=list)
    return _hash_files(paths, f"{stage}:{params}")


def run_stage(cfg: PipelineConfig, stage: str, force: bool = False) -> dict:
    """Run one stage, skipping the work when inputs and params are unchanged."""
    if stage not in _STAGE_FUNCS:
        raise ConfigError(f"unknown stage {stage!r}; expected one of "
                          f"{sorted(_STAGE_FUNCS)}")
    cfg.validate()
    Path(cfg.outdir).mkdir(parents=True, exist_ok=True)
    input_hash = _stage_hash(cfg, stage)
    report_path = _out(cfg, f"report_{stage.replace('-', '_')}.json")
    if not force and report_path.exists():
        prev = json.loads(report_path.read_text())
        outputs_ok = all(_out(cfg, name).exists() for name in _STAGE_OUTPUTS[stage])
        if prev.get("input_hash") == input_hash and outputs_ok:
            prev["cached"] = True
            return prev
    start = time.monotonic()
    counts = _STAGE_FUNCS[stage](cfg)
    return _write_report(cfg, stage, input_hash, counts,
                         wall_time=time.monotonic() - start)


def run_all(cfg: PipelineConfig, force: bool = False) -> dict:
    """Run every stage in order and write the funnel manifest."""
    cfg.validate()
    Path(cfg.outdir).mkdir(parents=True, exist_ok=True)
    reports = {}
    funnel = {}
    for stage in STAGES:
        if stage == "score" and not cfg.classifier:
            labels_path = Path(cfg.labels) if cfg.labels else _out(cfg, "labels.tsv")
            if labels_path.exists():
                reports["fit-quality"] = run_stage(cfg, "fit-quality", force=force)
        report = run_stage(cfg, stage, force=force)
        reports[stage] = report
        funnel[stage] = {"input": report["counts"].get("input", 0),
                         "output": report["counts"].get("output", 0)}
    manifest = {"config": {k: (list(v) if isinstance(v, tuple) else v)
                           for k, v in asdict(cfg).items()},
                "funnel": funnel,
                "stages": {name: r["counts"] for name, r in reports.items()}}
    _out(cfg, "manifest.json").write_text(json.dumps(manifest, indent=2,
                                                     sort_keys=True) + "\n")
    return manifest
