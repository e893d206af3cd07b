// scratch: full grid re-scan with corrected bounds and degeneracy rules
use sparse_isac_core::beampattern::{theorem_check, theorem_grid, TheoremStatus};
use sparse_isac_core::geometry::{build, Axis};

fn main() {
    let t0 = std::time::Instant::now();
    let (mut pass, mut fail, mut degen) = (0usize, 0usize, 0usize);
    for kind in theorem_grid() {
        let g = build(&kind).unwrap();
        for axis in [Axis::Y, Axis::Z] {
            let row = theorem_check(&g, axis).unwrap();
            match row.status {
                TheoremStatus::Pass => pass += 1,
                TheoremStatus::Degenerate => degen += 1,
                TheoremStatus::Fail => {
                    fail += 1;
                    println!("FAIL {:?} {:?} bw={:?} ({:.6},{:.6}) tight={:?}",
                        kind, axis, row.bw_numeric, row.lower, row.upper, row.tight_upper);
                }
            }
        }
    }
    println!("pass={pass} fail={fail} degen={degen} elapsed={:?}", t0.elapsed());
}
