"""Command-line entry points: train, generate, inspect, report, serve.

Exit codes: 0 success, 1 I/O or file-format problems, 2 configuration
validation, 3 numeric abort during training.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, LogFormatError, NumericError
from .gradlog import deserialize, serialize, summary
from .modelfile import load_model, save_model
from .trainer import TrainingConfig, generate, train

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# documented default for the horizon report; early-training magnitudes on
# desk-scale runs sit around 1e-2..1e-4, so 2e-3 lands horizons in 2..5
DEFAULT_EPSILON = 2e-3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rnngrad",
        description="Train a character-level RNN and explore how gradient "
                    "contributions flow back from each loss origin.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model, writing a gradient log")
    p.add_argument("--corpus", required=True, help="UTF-8 text file")
    p.add_argument("--out", default="gradlog.json", help="gradient log path")
    p.add_argument("--model-out", default=None, help="model JSON path")
    p.add_argument("--batch-size", type=int, default=25)
    p.add_argument("--hidden-size", type=int, default=100)
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--optimizer", choices=["sgd", "adagrad"], default="adagrad")
    p.add_argument("--clip-threshold", type=float, default=5.0)
    p.add_argument("--record-interval", type=int, default=100)
    p.add_argument("--horizon", type=int, default=5)
    p.add_argument("--max-batches", type=int, default=5000)
    p.add_argument("--init-scale", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon-adagrad", type=float, default=1e-8)

    p = sub.add_parser("generate", help="sample text from a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--length", type=int, default=200)
    p.add_argument("--seed-char", default=None,
                   help="starting symbol (default: first vocab symbol)")
    p.add_argument("--mode", choices=["argmax", "sample"], default="sample")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("inspect", help="print a text report of a gradient log")
    p.add_argument("--log", required=True)
    p.add_argument("--batch", type=int, default=None,
                   help="batch index to detail (default: summary table)")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                   help="threshold for the per-origin gradient horizon")

    p = sub.add_parser("report", help="render figures and summary.csv")
    p.add_argument("--log", required=True)
    p.add_argument("--out-dir", default="report")
    p.add_argument("--batch", type=int, default=None)
    p.add_argument("--origin", type=int, default=None)

    p = sub.add_parser("serve", help="serve the log and explorer UI over HTTP")
    p.add_argument("--log", required=True)
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static-dir", default=None,
                   help="built UI assets (default: ./frontend/dist if present)")

    return parser


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_log(path: str):
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def cmd_train(args) -> int:
    cfg = TrainingConfig(
        batch_size=args.batch_size, hidden_size=args.hidden_size,
        learning_rate=args.learning_rate, optimizer=args.optimizer,
        clip_threshold=args.clip_threshold, record_interval=args.record_interval,
        horizon=args.horizon, max_batches=args.max_batches,
        init_scale=args.init_scale, seed=args.seed,
        epsilon_adagrad=args.epsilon_adagrad)
    cfg.validate()
    corpus_text = _read_text(args.corpus)

    def progress(b: int, loss: float, smoothed: float) -> None:
        if b % cfg.record_interval == 0:
            print(f"batch {b:>7d}  loss {loss:8.4f}  smoothed {smoothed:8.4f}")

    params, log = train(corpus_text, cfg, corpus_id=args.corpus,
                        progress=progress)
    with open(args.out, "wb") as fh:
        fh.write(serialize(log))
    print(f"wrote {len(log.records)} records to {args.out}")
    if args.model_out:
        from .core import build_vocab
        save_model(args.model_out, params, build_vocab(corpus_text))
        print(f"wrote model to {args.model_out}")
    return EXIT_OK


def cmd_generate(args) -> int:
    params, vocab = load_model(args.model)
    seed_char = args.seed_char if args.seed_char is not None else vocab.symbols[0]
    text = generate(params, vocab, seed_char, args.length, args.mode, args.seed)
    sys.stdout.write(text + "\n")
    return EXIT_OK


def cmd_inspect(args) -> int:
    log = _load_log(args.log)
    if args.batch is None:
        s = summary(log)
        print(f"{'record':>6}  {'batch':>8}  {'offset':>8}  "
              f"{'max_grad':>12}  {'accuracy':>8}  {'loss':>8}")
        for i, r in enumerate(log.records):
            print(f"{i:>6}  {r.batch_index:>8}  {r.char_offset:>8}  "
                  f"{r.max_gradient:>12.6g}  {r.accuracy:>8.3f}  "
                  f"{r.batch_loss:>8.4f}")
        print(f"records: {s.record_count}  "
              f"global max gradient: {s.global_max_gradient:.6g}")
        return EXIT_OK

    by_index = {r.batch_index: r for r in log.records}
    if args.batch not in by_index:
        raise ConfigError(f"no record for batch {args.batch}; "
                          f"available: {sorted(by_index)}")
    r = by_index[args.batch]
    glyphs = {"\n": "¶", "\t": "→", " ": "␣", "\r": "␍"}
    show = lambda s: "".join(glyphs.get(c, c) for c in s)
    print(f"batch {r.batch_index}  chars {r.char_offset}.."
          f"{r.char_offset + r.n - 1}  max gradient {r.max_gradient:.6g}  "
          f"loss {r.batch_loss:.4f}")
    print(f"true:      {show(r.true_labels)}")
    print(f"predicted: {show(r.predicted_labels)}")
    print(f"correct:   {''.join('^' if c else '.' for c in r.correct)}")
    print(f"\nmagnitudes (origin t, distance d = 0..min(k, t)) and horizon "
          f"at eps={args.epsilon:g}:")
    for t, row in enumerate(r.magnitudes):
        horizon = 0
        for m in row:
            if m < args.epsilon:
                break
            horizon += 1
        cells = "  ".join(f"{m:.3e}" for m in row)
        print(f"  t={t:>3} '{show(r.true_labels[t])}'  horizon={horizon}  {cells}")
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import write_report
    log = _load_log(args.log)
    try:
        paths = write_report(log, args.out_dir, batch=args.batch,
                             origin=args.origin)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .server import make_server, serve_forever
    log = _load_log(args.log)  # validate before serving
    static_dir = args.static_dir
    if static_dir is None:
        import os
        candidate = os.path.join("frontend", "dist")
        if os.path.isdir(candidate):
            static_dir = candidate
    server = make_server(serialize(log), args.port, static_dir,
                         host=args.host, quiet=False)
    print(f"serving {args.log} on http://{args.host}:{args.port} "
          f"(static: {static_dir or 'none'})")
    serve_forever(server)
    return EXIT_OK


_COMMANDS = {
    "train": cmd_train,
    "generate": cmd_generate,
    "inspect": cmd_inspect,
    "report": cmd_report,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc.strerror or exc}: {exc.filename}", file=sys.stderr)
        return EXIT_IO
    except LogFormatError as exc:
        print(f"error: invalid file: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"error: numeric abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
