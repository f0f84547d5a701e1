//! Benchmark fixtures shared by the criterion targets.

use hopfcalc::{dsl, CrossAlgebra, CrossElement, FodcData, WedgeOptions};

pub fn calculus(builtin: &str) -> FodcData {
    dsl::builtin(builtin).expect("builtin").calculus().expect("calculus")
}

pub fn cross(builtin: &str, max_degree: usize) -> CrossAlgebra {
    CrossAlgebra::new(calculus(builtin), WedgeOptions::with_max_degree(max_degree)).expect("cross algebra")
}

pub fn element(cp: &CrossAlgebra, text: &str) -> CrossElement {
    dsl::parse_and_evaluate(text, cp).expect("expression").into_cross(cp)
}
