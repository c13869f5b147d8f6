"""Command-line interface: annotate, train, eval, bench and gen-corpus."""

from __future__ import annotations

import argparse
import json
import logging
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .core import DCT, TempusError
from .corpus import CorpusFormatError, DocumentRecord, dumps_jsonl, iter_jsonl, load_jsonl
from .io import atomic_write_text
from .pipeline import (MissingDCTError, ModelLoadError, Models, annotate_document, evaluate_corpus,
                       resolve_model_dir, train_models)
from .preprocess import preprocess
from .temprel import DEFAULT_MAX_SENT_DIST
from .timeline import SCHEMA_VERSION, emit_dot, emit_html, emit_json, emit_text, parse_json

log = logging.getLogger("tempus")

EXIT_OK, EXIT_FAILURE, EXIT_INPUT, EXIT_MODEL = 0, 1, 2, 3
FORMAT_EXT = {"json": "json", "dot": "dot", "html": "html", "text": "txt"}


class InputError(TempusError):
    """Bad command-line input; exits with status 2."""


def _load_models(flag) -> Models:
    directory = resolve_model_dir(flag)
    log.info("loading models from %s", directory)
    return Models.load(directory)


def _read_inputs(paths, dct_flag) -> list[DocumentRecord]:
    records = []
    for path in map(Path, paths):
        if path.suffix == ".jsonl":
            for rec in iter_jsonl(path):
                records.append(DocumentRecord(rec.id, rec.text, rec.dct or dct_flag, rec.gold))
        else:
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise InputError(f"cannot read {path}: {exc.strerror}") from None
            records.append(DocumentRecord(path.stem, text, dct_flag))
    for rec in records:
        if rec.dct is None:
            raise MissingDCTError(f"document {rec.id!r} has no DCT; pass --dct YYYY-MM-DD")
    return records


def _render(fmt: str, ann, compact: bool) -> str:
    if fmt == "json":
        return emit_json(ann.graph, ann.timeline, ann.doc, indent=None if compact else 2)
    if fmt == "dot":
        return emit_dot(ann.graph)
    if fmt == "html":
        return emit_html(ann.timeline, ann.doc, ann.graph)
    return emit_text(ann.timeline, ann.graph)


def cmd_annotate(args) -> int:
    if args.dct is not None:
        try:
            DCT.parse(args.dct)
        except ValueError:
            raise InputError(f"--dct {args.dct!r} is not an ISO date") from None
    records = _read_inputs(args.inputs, args.dct)
    models = None if args.rules_only else _load_models(args.models)

    def run(rec):
        doc = preprocess(rec.text, rec.dct, rec.id)
        return annotate_document(doc, models, rules_only=args.rules_only, max_sent_dist=args.max_sent_dist)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        annotations = list(pool.map(run, records))  # map keeps input order

    if args.figures:
        from .plotting import plot_timeline
        for ann in annotations:
            plot_timeline(ann.timeline, ann.graph, Path(args.figures) / f"{ann.doc.id or 'document'}_timeline.png",
                          title=ann.doc.id)

    out = Path(args.output) if args.output else None
    if out is not None and (out.is_dir() or len(annotations) > 1 and args.format in ("html", "dot")):
        out.mkdir(parents=True, exist_ok=True)
        for ann in annotations:
            atomic_write_text(out / f"{ann.doc.id or 'document'}.{FORMAT_EXT[args.format]}",
                              _render(args.format, ann, compact=False))
        return EXIT_OK
    compact = len(annotations) > 1
    text = "".join(_render(args.format, ann, compact) for ann in annotations)
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)
    return EXIT_OK


def cmd_train(args) -> int:
    records = load_jsonl(args.corpus)
    if not records:
        raise InputError(f"{args.corpus} holds no documents")
    tasks = ("chunker", "events", "temprel") if args.task == "all" else (args.task,)
    base = None if args.task == "all" else _load_models(args.models)
    log.info("training %s on %d documents", ", ".join(tasks), len(records))
    models = train_models(records, epochs=args.epochs, seed=args.seed, inference_feedback=args.inference_feedback,
                          max_sent_dist=args.max_sent_dist, tasks=tasks, base=base)
    models.save(args.out)
    print(f"wrote models to {args.out}")
    return EXIT_OK


def _load_system(path) -> dict:
    graphs = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                graph, _ = parse_json(line)
            except (ValueError, KeyError, TypeError) as exc:
                raise CorpusFormatError(str(path), lineno, f"not an annotation record: {exc}") from None
            graphs[data.get("id", "")] = graph
    return graphs


def cmd_eval(args) -> int:
    records = load_jsonl(args.gold)
    if args.system:
        report = evaluate_corpus(records, system=_load_system(args.system), relaxed=args.relaxed, mode=args.mode)
    else:
        report = evaluate_corpus(records, _load_models(args.models), relaxed=args.relaxed, mode=args.mode,
                                 max_sent_dist=args.max_sent_dist)
    sys.stdout.write(report.to_table())
    if args.out:
        from .plotting import plot_prf
        out = Path(args.out)
        atomic_write_text(out / "report.tsv", report.to_tsv())
        atomic_write_text(out / "report.json", report.to_json())
        plot_prf(report.rows, out / "prf.png")
    return EXIT_OK


def run_bench(tokens: int, seed: int, models: Models, repeats: int = 3) -> dict:
    """Cold-cache timings of prefilter chunking against the regex baseline, best of ``repeats``."""
    from .corpus import generate_text
    from .timex.baseline import regex_extract
    from .timex.chunker import chunk_timex
    from .timex.gazetteer import TriggerGazetteer

    texts = generate_text(tokens, seed)
    t0 = time.perf_counter()
    docs = [preprocess(t, "2000-01-01", f"bench{i:05d}") for i, t in enumerate(texts)]
    t_pre = time.perf_counter() - t0
    n_tokens = sum(len(d.tokens) for d in docs)

    t_chunk = t_regex = float("inf")
    for _ in range(repeats):
        # every repeat starts from empty caches
        models.chunker.memo.clear()
        gazetteer = TriggerGazetteer.default()
        stats: dict = {}
        t0 = time.perf_counter()
        n_chunker = sum(len(chunk_timex(d, models.chunker, gazetteer, stats)) for d in docs)
        t_chunk = min(t_chunk, time.perf_counter() - t0)

        t0 = time.perf_counter()
        n_regex = sum(len(regex_extract(t)) for t in texts)
        t_regex = min(t_regex, time.perf_counter() - t0)

    short = " ".join(generate_text(100, seed + 1))
    warm = " ".join(generate_text(100, seed + 2))
    annotate_document(preprocess(warm, "2000-01-01"), models)
    latencies = []
    for _ in range(5):
        t0 = time.perf_counter()
        annotate_document(preprocess(short, "2000-01-01"), models)
        latencies.append(time.perf_counter() - t0)
    return {
        "schema_version": SCHEMA_VERSION,
        "tokens": n_tokens,
        "documents": len(docs),
        "seed": seed,
        "repeats": repeats,
        "preprocess_seconds": t_pre,
        "chunker_seconds": t_chunk,
        "regex_seconds": t_regex,
        "speedup": t_regex / t_chunk if t_chunk else float("inf"),
        "chunker_timexes": n_chunker,
        "regex_timexes": n_regex,
        "classifier_calls": stats.get("classifier_calls", 0),
        "pipeline_tokens": len(preprocess(short).tokens),
        "pipeline_ms_median": 1000 * statistics.median(latencies),
    }


def cmd_bench(args) -> int:
    result = run_bench(args.tokens, args.seed, _load_models(args.models), args.repeats)
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if args.out:
        from .plotting import plot_bench
        out = Path(args.out)
        atomic_write_text(out / "bench.json", text)
        rows = [f"# schema_version: {SCHEMA_VERSION}", "system\tseconds\ttokens\ttimexes",
                f"prefilter_chunker\t{result['chunker_seconds']:.6f}\t{result['tokens']}\t{result['chunker_timexes']}",
                f"regex_baseline\t{result['regex_seconds']:.6f}\t{result['tokens']}\t{result['regex_timexes']}"]
        atomic_write_text(out / "bench.tsv", "\n".join(rows) + "\n")
        plot_bench({"prefilter chunker": result["chunker_seconds"], "regex baseline": result["regex_seconds"]},
                   out / "bench.png", title=f"Timex extraction, {result['tokens']} tokens")
    return EXIT_OK


def cmd_gen_corpus(args) -> int:
    from .corpus import generate_corpus
    text = dumps_jsonl(generate_corpus(args.docs, seed=args.seed))
    if args.output:
        atomic_write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tempus", description="Temporal information extraction.")
    ap.add_argument("--version", action="version", version=f"tempus {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def models_flag(p):
        p.add_argument("--models", help="model directory (default: $TEMPUS_MODEL_DIR, then bundled models)")

    def sent_dist_flag(p):
        p.add_argument("--max-sent-dist", type=int, default=DEFAULT_MAX_SENT_DIST,
                       help="largest sentence distance of candidate pairs (default: %(default)s)")

    p = sub.add_parser("annotate", help="run the pipeline on .txt or .jsonl inputs")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--dct", help="document creation time, YYYY-MM-DD (required for .txt inputs)")
    p.add_argument("--format", choices=sorted(FORMAT_EXT), default="json")
    sent_dist_flag(p)
    models_flag(p)
    p.add_argument("--rules-only", action="store_true", help="rule-based Timex only, no models needed")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--figures", help="directory for timeline PNGs")
    p.add_argument("-o", "--output", help="output file, or directory for one file per document")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("train", help="train models on a gold JSON Lines corpus")
    p.add_argument("task", choices=("chunker", "events", "temprel", "all"))
    p.add_argument("corpus")
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inference-feedback", action="store_true",
                   help="update TempRel weights against globally inferred labels")
    sent_dist_flag(p)
    models_flag(p)
    p.add_argument("--out", required=True, help="directory for the complete model set")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="score against a gold corpus")
    p.add_argument("gold")
    p.add_argument("--system", help="annotate --format json output (JSON Lines) to score")
    models_flag(p)
    p.add_argument("--relaxed", action="store_true", help="also report the relaxed Event-Event metric")
    p.add_argument("--mode", choices=("strict", "overlap"), default="strict", help="span matching for extraction")
    sent_dist_flag(p)
    p.add_argument("--out", help="directory for report.tsv, report.json and prf.png")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="time prefilter chunking against the regex baseline")
    p.add_argument("--tokens", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3, help="timing repeats; the fastest is reported")
    models_flag(p)
    p.add_argument("--out", help="directory for bench.tsv, bench.json and bench.png")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-corpus", help="write the synthetic gold corpus as JSON Lines")
    p.add_argument("--docs", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ModelLoadError as exc:
        print(f"tempus: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (MissingDCTError, InputError, CorpusFormatError) as exc:
        print(f"tempus: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"tempus: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TempusError as exc:
        print(f"tempus: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
