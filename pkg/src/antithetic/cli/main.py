"""Command-line entry point.

Exit status: 0 on success, 1 on usage errors, 2 when a command fails at run time.
"""
import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from ..constants import (
    DEFAULT_ALPHA,
    DEFAULT_BATCH_SIZE,
    DEFAULT_BETA,
    DEFAULT_EPOCHS,
    DEFAULT_HIDDEN,
    DEFAULT_INPUT_DIMS,
    DEFAULT_LR,
    DEFAULT_MARGIN,
    DOWNSAMPLE_FACTOR_HIGH,
    DOWNSAMPLE_FACTOR_LOW,
    GRADCHECK_TOLERANCE,
    LOSS_MODES,
    SYNTH_HEIGHT,
    SYNTH_WIDTH,
    THREADS_ENV_VAR,
)
from ..dataset.antithetical import generate_antithetical, select_partition
from ..dataset.manifest_io import load_manifest, save_manifest
from ..dataset.synthetic import MANIFEST_NAME, synth_corpus
from ..evalkit.distances import distance_by_resolution
from ..evalkit.evaluate import evaluate_model
from ..evalkit.experiments import compare_fusion, compare_losses, sweep_weights
from ..evalkit.triplets import select_triplets, training_selection_histogram, triplet_histogram
from ..evalkit.writers import histogram_frame, resolution_frame, write_frame, write_report
from ..exceptions import AntitheticError, UnscoredRecordError
from ..iqa.partition import partition, sharpness_summary, split_threshold
from ..iqa.sharpness import score_manifest
from ..metric_core.gradcheck import loss_gradchecks
from ..models.configs import AugmentConfig, FusionStrategy, LossWeights, ModelConfig, SynthConfig, TrainConfig
from ..models.records import Manifest, PartitionLabel
from ..trainer.checkpoint import load_model
from ..trainer.step import network_gradcheck
from ..trainer.training import embed_manifest, save_history, train

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Raised for command-line mistakes detected after parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _rebased(manifest: Manifest, out: Path) -> Manifest:
    """Rewrite relative record paths so they resolve from ``out``'s directory."""
    new_root = out.parent.resolve()
    records = []
    for record in manifest.records:
        location = manifest.resolve(record).resolve()
        records.append(record.model_copy(update={"path": Path(os.path.relpath(location, new_root)).as_posix()}))
    return Manifest(records=records, root=new_root)


def _write_manifest(manifest: Manifest, out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    save_manifest(_rebased(manifest, out), out)


def _threads(args) -> int:
    value = args.threads if args.threads is not None else os.environ.get(THREADS_ENV_VAR, "1")
    try:
        threads = int(value)
    except ValueError:
        raise UsageError(f"{THREADS_ENV_VAR} must be an integer, got {value!r}")
    if threads < 1:
        raise UsageError("thread count must be at least 1")
    return threads


def cmd_score(args) -> int:
    scored = score_manifest(load_manifest(args.manifest), threads=_threads(args))
    _write_manifest(scored, Path(args.out))
    return 0


def cmd_split(args) -> int:
    manifest = load_manifest(args.scores)
    scores = []
    for record in manifest.records:
        if record.sharpness is None:
            raise UnscoredRecordError(record.path)
        scores.append(record.sharpness)
    threshold = split_threshold(scores)
    split = partition(manifest, threshold)
    _write_manifest(split, Path(args.out))
    print(f"threshold {threshold:.17g}")
    for label in PartitionLabel:
        summary = sharpness_summary(split, label)
        print(f"{label.value} num={summary.num} mean={summary.mean} median={summary.median}")
    return 0


def cmd_augment(args) -> int:
    cfg = AugmentConfig(
        factor_low=args.factor_low,
        factor_high=args.factor_high,
        enhancer=args.enhancer,
        seed=args.seed,
        fusion=FusionStrategy(args.fusion),
    )
    out_dir = Path(args.out_dir)
    generated = generate_antithetical(load_manifest(args.manifest), cfg, out_dir, threads=_threads(args))
    save_manifest(generated, out_dir / MANIFEST_NAME)
    print(out_dir / MANIFEST_NAME)
    return 0


def cmd_synth(args) -> int:
    cfg = SynthConfig(
        identities=args.identities,
        images_per_identity=args.per_id,
        height=args.height,
        width=args.width,
        blur_fraction=args.blur_fraction,
        seed=args.seed,
    )
    corpus = synth_corpus(cfg, args.out_dir)
    print(f"{len(corpus.manifest)} images, {len(corpus.degraded)} blurred")
    return 0


def _train_config(args, checkpoint: Optional[Path]) -> TrainConfig:
    return TrainConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        lr0=args.lr,
        loss_mode=args.loss,
        weights=LossWeights(alpha=args.alpha, beta=args.beta, margin=args.margin),
        pk=tuple(args.pk) if args.pk else None,
        hflip=not args.no_hflip,
        random_erase=not args.no_erase,
        seed=args.seed,
        checkpoint=checkpoint,
    )


def _model_config(args) -> ModelConfig:
    # num_identities is replaced by the trainer once the identity space is known
    return ModelConfig(input_dims=tuple(args.input_dims), hidden=args.hidden, num_identities=1, seed=args.seed)


def cmd_train(args) -> int:
    if args.triplets and "trihard" not in args.loss:
        raise UsageError("--triplets needs a trihard objective")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    antithetical = load_manifest(args.antithetical) if args.antithetical else None
    if antithetical is not None and args.subset:
        antithetical = select_partition(antithetical, PartitionLabel(args.subset))
    result = train(
        _train_config(args, out),
        load_manifest(args.manifest),
        antithetical,
        model_cfg=_model_config(args),
        threads=_threads(args),
    )
    save_history(result.history, Path(args.history) if args.history else out.with_name(out.name + ".history.csv"))
    if args.triplets:
        write_frame(histogram_frame(training_selection_histogram(result)), args.triplets)
    return 0


def cmd_eval(args) -> int:
    model = load_model(args.model)
    report = evaluate_model(model, load_manifest(args.query), load_manifest(args.gallery), threads=_threads(args))
    write_report(report, args.report)
    print(f"rank-1 {report.rank1:.4f} mAP {report.map:.4f}")
    return 0


def cmd_analyze_triplets(args) -> int:
    model = load_model(args.model)
    manifest = load_manifest(args.manifest)
    for record in manifest.records:
        if record.partition is None:
            raise UnscoredRecordError(record.path, missing="partition")
    features = embed_manifest(model, manifest, threads=_threads(args))
    labels = [r.identity for r in manifest.records]
    bins = [r.partition for r in manifest.records]
    histogram = triplet_histogram(select_triplets(features, labels), bins)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_frame(histogram_frame(histogram), out)
    write_frame(resolution_frame(distance_by_resolution(features, labels, bins)),
                out.with_name(f"{out.stem}_resolution{out.suffix or '.csv'}"))
    return 0


def cmd_gradcheck(args) -> int:
    errors = loss_gradchecks(args.seed)
    errors["network"] = network_gradcheck(args.seed)
    for name, error in errors.items():
        print(f"{name} {error:.3e}")
    return 0 if all(error < GRADCHECK_TOLERANCE for error in errors.values()) else 2


def cmd_compare(args) -> int:
    original = load_manifest(args.manifest)
    query, gallery = load_manifest(args.query), load_manifest(args.gallery)
    cfg = _train_config(args, None)
    model_cfg = _model_config(args)
    threads = _threads(args)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.kind == "losses":
        antithetical = load_manifest(args.antithetical) if args.antithetical else None
        table = compare_losses(original, query, gallery, cfg, antithetical, model_cfg=model_cfg, threads=threads)
    elif args.kind == "fusion":
        work_dir = Path(args.work_dir) if args.work_dir else out.with_name(out.stem + "_sets")
        table = compare_fusion(original, query, gallery, cfg, work_dir, args.seed, model_cfg=model_cfg, threads=threads)
    else:
        antithetical = load_manifest(args.antithetical) if args.antithetical else None
        table = sweep_weights(original, query, gallery, cfg, args.alphas, args.betas, antithetical,
                              model_cfg=model_cfg, threads=threads)
    write_frame(table, out)
    print(table.to_string(index=False))
    return 0


def _add_training_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--loss", choices=LOSS_MODES, default="softmax+ccl", help="Objective (default: softmax+ccl)")
    parser.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="Intra-center weight")
    parser.add_argument("--beta", type=float, default=DEFAULT_BETA, help="Inter-center weight")
    parser.add_argument("--margin", type=float, default=DEFAULT_MARGIN, help="Trihard margin")
    parser.add_argument("--epochs", type=int, default=DEFAULT_EPOCHS, help="Training epochs")
    parser.add_argument("--batch-size", type=int, default=DEFAULT_BATCH_SIZE, help="Images per batch")
    parser.add_argument("--lr", type=float, default=DEFAULT_LR, help="Initial learning rate")
    parser.add_argument("--pk", type=int, nargs=2, metavar=("P", "K"), help="PK batch sampling")
    parser.add_argument("--no-hflip", action="store_true", help="Disable horizontal flipping")
    parser.add_argument("--no-erase", action="store_true", help="Disable random erasing")
    parser.add_argument("--input-dims", type=int, nargs=2, default=list(DEFAULT_INPUT_DIMS),
                        metavar=("H", "W"), help="Network input size")
    parser.add_argument("--hidden", type=int, nargs="+", default=list(DEFAULT_HIDDEN), help="Layer widths")
    parser.add_argument("--seed", type=int, required=True, help="Random seed")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, help=f"Worker threads (default: ${THREADS_ENV_VAR} or 1)")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    parser = _Parser(prog="antithetic", description="Cross-resolution person re-identification toolkit")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("score", parents=[common], help="Attach sharpness scores to a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_score)

    p = sub.add_parser("split", parents=[common], help="Label scored records HR/LR at the mean score")
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_split)

    p = sub.add_parser("augment", parents=[common], help="Generate the antithetical set")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--enhancer", default="classical", help="classical or external:<program>")
    p.add_argument("--fusion", choices=[s.value for s in FusionStrategy], default=FusionStrategy.ANTITHETICAL.value)
    p.add_argument("--factor-low", type=float, default=DOWNSAMPLE_FACTOR_LOW)
    p.add_argument("--factor-high", type=float, default=DOWNSAMPLE_FACTOR_HIGH)
    p.set_defaults(handler=cmd_augment)

    p = sub.add_parser("synth", parents=[common], help="Render a synthetic identity corpus")
    p.add_argument("--identities", type=int, required=True)
    p.add_argument("--per-id", type=int, required=True)
    p.add_argument("--height", type=int, default=SYNTH_HEIGHT)
    p.add_argument("--width", type=int, default=SYNTH_WIDTH)
    p.add_argument("--blur-fraction", type=float, default=0.5)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("train", parents=[common], help="Train an embedding network")
    p.add_argument("--manifest", required=True, help="Original training manifest")
    p.add_argument("--antithetical", help="Antithetical manifest merged into the pool")
    p.add_argument("--subset", choices=[label.value for label in PartitionLabel],
                   help="Only merge this partition of the antithetical set")
    p.add_argument("--out", required=True, help="Checkpoint path")
    p.add_argument("--history", help="History CSV (default: <out>.history.csv)")
    p.add_argument("--triplets", help="Histogram CSV of the triplets mined while training (partitioned pool)")
    _add_training_flags(p)
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("eval", parents=[common], help="Rank a gallery and write a JSON report")
    p.add_argument("--model", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--gallery", required=True)
    p.add_argument("--report", required=True)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("analyze-triplets", parents=[common], help="Trihard selection histogram and resolution table")
    p.add_argument("--model", required=True)
    p.add_argument("--manifest", required=True, help="Partitioned manifest")
    p.add_argument("--out", required=True, help="Histogram CSV; the resolution table goes next to it")
    p.set_defaults(handler=cmd_analyze_triplets)

    p = sub.add_parser("gradcheck", parents=[common], help="Finite-difference check of every gradient")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_gradcheck)

    p = sub.add_parser("compare", parents=[common], help="Train and evaluate a comparison table")
    p.add_argument("--manifest", required=True, help="Original training manifest (partitioned for fusion)")
    p.add_argument("--query", required=True)
    p.add_argument("--gallery", required=True)
    p.add_argument("--kind", choices=["losses", "fusion", "weights"], required=True)
    p.add_argument("--antithetical", help="Antithetical manifest for losses/weights")
    p.add_argument("--work-dir", help="Where fusion companion sets are written")
    p.add_argument("--alphas", type=float, nargs="+", default=[0.0, 0.05, 0.1, 0.2])
    p.add_argument("--betas", type=float, nargs="+", default=[0.0, 0.05, 0.1, 0.2])
    p.add_argument("--out", required=True, help="Result CSV")
    _add_training_flags(p)
    p.set_defaults(handler=cmd_compare)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except UsageError as e:
        print(f"antithetic {args.command}: error: {e}", file=sys.stderr)
        return 1
    except (AntitheticError, OSError, ValueError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"antithetic {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
