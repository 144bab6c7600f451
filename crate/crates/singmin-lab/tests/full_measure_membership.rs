//! A law lives inside its own order-n mould with probability one: points
//! sampled from the uniform unit square must all show order-2 membership
//! evidence at a fixed positive threshold.

use singmin_lab::laws::{UniformBox, VectorLaw};
use singmin_lab::moulds::{membership_verdict, mould_ratio_sequence, MouldVerdict};
use singmin_lab::rng::Seed;

#[test]
fn sampled_points_are_members_at_full_order() {
    let law = UniformBox {
        dim: 2,
        lo: 0.0,
        hi: 1.0,
    };
    let ks = [32, 64, 128];
    let n_draws = 200_000;
    let threshold = 0.1;

    for point_index in 0..100u64 {
        let x = law.sample(Seed(1234), 1_000_000_000 + point_index);
        let seq =
            mould_ratio_sequence(&law, &x, 2, &ks, n_draws, Seed(77), 2).expect("valid sequence");
        let verdict = membership_verdict(&seq, threshold).expect("three scales");
        assert_eq!(
            verdict,
            MouldVerdict::MemberEvidence,
            "point {point_index} at {:?}: {:?}",
            x.as_slice(),
            seq.entries
        );
    }
}
