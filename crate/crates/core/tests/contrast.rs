use std::time::Duration;

use noncircular::interval::Rational;
use noncircular::pi_methods::{run_for_duration, Method};
use num_bigint::BigInt;

// Spend the same wall-clock budget on each method and compare widths.
#[test]
fn equal_time_budget_ranks_arcsin_last() {
    let budget = Duration::from_millis(1200);
    let arcsin = run_for_duration(Method::Arcsin, budget).unwrap();
    let factor = Rational::from_integer(BigInt::from(1000));
    for m in [Method::Cosroot, Method::Archimedes] {
        let e = run_for_duration(m, budget).unwrap();
        assert!(
            e.width() * &factor <= arcsin.width(),
            "{m}: width {} vs arcsin {}",
            e.value,
            arcsin.value
        );
    }
}
