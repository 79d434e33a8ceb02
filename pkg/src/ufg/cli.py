"""Command line entry points: serve the HTTP API, render levels, run experiments."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

DEFAULT_DATA_DIR = "./ufg-data"


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .session import SessionStore

    data_dir = args.data or os.environ.get("UFG_DATA") or DEFAULT_DATA_DIR
    app = create_app(SessionStore(data_dir))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_render(args) -> int:
    from .model import layout_from_json
    from .render import layout_to_svg

    doc = json.loads(Path(args.level).read_text())
    layout = layout_from_json(doc)
    svg = layout_to_svg(layout, scale=args.scale)
    Path(args.svg).write_text(svg)
    print(f"wrote {args.svg}")
    return 0


def _cmd_experiment(args) -> int:
    from .designer import run_experiment, summarize, write_results_csv

    results = run_experiment(
        n_seeds=args.seeds,
        max_iterations=args.iterations,
        assist=args.assist,
        noise_sigma=args.noise,
    )
    write_results_csv(results, args.out)
    print(f"wrote {len(results)} runs to {args.out}")
    for arm, stats in summarize(results).items():
        print(
            f"assist {arm}: {stats['runs']} runs, median human rounds "
            f"{stats['median_human_rounds']}, median final distance "
            f"{stats['median_final_distance']:.4f}, converged {stats['converged']}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ufg", description="Urban FPS level generator")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP session service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--data", default=None, help=f"session directory (or $UFG_DATA, default {DEFAULT_DATA_DIR})")
    serve.set_defaults(func=_cmd_serve)

    render = sub.add_parser("render", help="render an exported level to SVG")
    render.add_argument("--level", required=True, help="level JSON file")
    render.add_argument("--svg", required=True, help="output SVG file")
    render.add_argument("--scale", type=float, default=1.0)
    render.set_defaults(func=_cmd_render)

    experiment = sub.add_parser("experiment", help="run simulated-designer experiments")
    experiment.add_argument("--seeds", type=int, required=True, help="number of seeds per arm")
    experiment.add_argument("--iterations", type=int, default=10, choices=(10, 20))
    experiment.add_argument("--assist", default="both", choices=("on", "off", "both"))
    experiment.add_argument("--noise", type=float, default=0.0, help="designer noise sigma")
    experiment.add_argument("--out", required=True, help="results CSV path")
    experiment.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
