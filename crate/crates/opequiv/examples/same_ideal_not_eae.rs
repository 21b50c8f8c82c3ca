//! The classic separating pair: the diagonal operators with singular
//! values 2^-n and 2^-2n generate the same ideal (Schatten criterion
//! holds with m = 2) yet are not equivalent after extension (the Timotin
//! shifted ratio diverges for every shift).

use opequiv::criteria::{schatten_test, timotin_test, CriterionVerdict, CriterionWitness};
use opequiv::seq::{DecayClass, SingularSequence};

fn main() {
    let t = SingularSequence::unit(DecayClass::geometric(0.5).unwrap());
    let s = SingularSequence::unit(DecayClass::geometric(0.25).unwrap());

    println!("T has singular values 2^-n, S has singular values 2^-2n\n");

    match schatten_test(&t, &s, 16, 10_000).unwrap() {
        CriterionVerdict::Holds {
            witness: CriterionWitness::Schatten(w),
        } => {
            println!("same-ideal criterion: HOLDS");
            println!("  shift m = {}, constant M = {:.6}", w.m, w.constant);
            println!("  i.e. t_(2(n-1)+j) <= M s_n and s_(2(n-1)+j) <= M t_n for all n\n");
        }
        other => println!("unexpected: {other:?}"),
    }

    match timotin_test(&t, &s, 16, 10_000, 1e-6).unwrap() {
        CriterionVerdict::RefutedAnalytic { certificate } => {
            println!("equivalence-after-extension criterion: REFUTED");
            println!("  {}", certificate.rate_description);
            println!("  sampled diverging ratio (n, t_n/s_n):");
            for (n, ratio) in certificate.evidence.iter().take(6) {
                println!("    n = {n:>4}  ratio = {ratio:.4e}");
            }
        }
        other => println!("unexpected: {other:?}"),
    }

    println!("\nsame ideal is necessary but not sufficient for equivalence after extension.");
}
