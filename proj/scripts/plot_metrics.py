#!/usr/bin/env python3
"""Plot training curves from a metrics.jsonl produced by `xoos train`.

Usage:
    plot_metrics.py RUN_DIR/metrics.jsonl [-o curve.png]

Draws exploitability vs iteration (log y) when probes are present, plus the
mean training loss on a second axis.
"""

import argparse
import json
import sys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("metrics", help="path to metrics.jsonl")
    ap.add_argument("-o", "--out", default=None, help="output image (default: <metrics>.png)")
    args = ap.parse_args()

    iters, losses, probe_iters, probes = [], [], [], []
    with open(args.metrics, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            iters.append(rec["iter"])
            losses.append(rec["mean_loss"])
            if "exploitability" in rec:
                probe_iters.append(rec["iter"])
                probes.append(rec["exploitability"])

    if not iters:
        print("no records in", args.metrics, file=sys.stderr)
        return 1

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax_loss = plt.subplots(figsize=(7, 4.5))
    ax_loss.plot(iters, losses, color="tab:gray", alpha=0.6, label="mean loss")
    ax_loss.set_xlabel("iteration")
    ax_loss.set_ylabel("mean KL loss")

    if probes:
        ax_ex = ax_loss.twinx()
        ax_ex.plot(probe_iters, probes, color="tab:blue", marker="o", label="exploitability")
        ax_ex.set_yscale("log")
        ax_ex.set_ylabel("exploitability (chips)")
        ax_ex.legend(loc="upper right")
    ax_loss.legend(loc="upper left")

    out = args.out or args.metrics + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print("wrote", out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
