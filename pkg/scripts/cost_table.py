"""Time-step counts for every artifact and the calibration of the step-counting flags."""

from walkqc import costs


def main():
    print(f"{'model':8} {'artifact':9} {'steps':>5} {'target':>6}")
    for c in costs.check_targets():
        mark = "" if c.reached else "  <- differs"
        print(f"{c.model:8} {c.artifact:9} {c.achieved:>5} {c.target:>6}{mark}")
    print("\nflag combinations (fuse_diagonal, absorb_diagonal, coin_then_shift, merge_into_select):")
    for conv, hits in costs.calibrate():
        print(f"  {conv.name}  {hits}/14")


if __name__ == "__main__":
    main()
