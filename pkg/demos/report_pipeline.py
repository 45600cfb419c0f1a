"""The reporting pipeline end to end: run, serialize, rerun, compare bytes.

Same entry points the command line uses.  `python -m walshfejer identities
--resolution 4 --out report.csv` does what the first half of this script
does.  The second half reruns the command and shows the serialized bytes
are identical, which is the property the test suite pins for every
command: same config, same bytes, no hidden state.
"""

import tempfile
from pathlib import Path

from walshfejer import ExperimentConfig, write_report
from walshfejer.experiments import cmd_identities, cmd_opnorm


def run_and_write(out_dir):
    cfg = ExperimentConfig(resolution=4)
    report = cmd_identities(cfg)
    csv_path = Path(out_dir) / "identities.csv"
    json_path = Path(out_dir) / "identities.json"
    write_report(report.rows, "csv", str(csv_path))
    write_report(report.rows, "json", str(json_path))
    return report, csv_path, json_path


def main():
    with tempfile.TemporaryDirectory() as tmp:
        report, csv_path, json_path = run_and_write(tmp)
        print(f"identity families checked: "
              f"{sum(1 for r in report.rows if r.status in ('pass', 'exact'))}, "
              f"all primary rows passing: {report.passed}")
        print()

        lines = csv_path.read_text().splitlines()
        print("CSV head:")
        for line in lines[:5]:
            print(f"  {line}")
        print(f"  ... {len(lines) - 5} more rows")
        print()

        first = csv_path.read_bytes()
        _, csv2, _ = run_and_write(tmp)
        print(f"rerun produces byte-identical CSV: {csv2.read_bytes() == first}")
        print()

        # a second command into the same pipeline; resolution 6 keeps the
        # scale grid of the full run while the kernels stay small
        cfg = ExperimentConfig(resolution=6, p_grid=(1.0,), level_grid=(2, 3))
        rep = cmd_opnorm(cfg)
        out = Path(tmp) / "opnorm.json"
        write_report(rep.rows, "json", str(out))
        print(f"operator-bound report: {len(rep.rows)} rows, "
              f"{out.stat().st_size} bytes of JSON")
        verdicts = [r for r in rep.rows if r.status in ("pass", "fail")]
        for r in verdicts:
            tag = "inf" if r.p is None else f"{r.p:g}"
            print(f"  {r.experiment:32s} p={tag:>4s} {r.status}")
        print()
        print("A fail row is a flatness verdict on this deliberately short")
        print("grid, not an error: ratio sequences climb before they level")
        print("off, and a two-point tail cannot tell the difference.  The")
        print("kernel-route verdict above is the exact bound that holds")
        print("regardless of grid length.")


if __name__ == "__main__":
    main()
