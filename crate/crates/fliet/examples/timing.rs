use std::time::Instant;
use fliet::decompose::{DecompositionStrategy, DecomposeOptions};
use fliet::exact::{Basis, Real};
use fliet::exact::rational::rat;
use fliet::fiet::rotation;

fn main() {
    let basis = Basis::with_sqrt(rat(2, 1));
    let alpha = Real::generator(&basis, 1).unwrap().halve();
    let f = rotation(&basis, &alpha).unwrap();

    let t0 = Instant::now();
    let shrunk = fliet::decompose::shrink_support(&f, 32).unwrap();
    eprintln!("shrink: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let p_inv = shrunk.p.inverse().unwrap();
    let (a, h) = fliet::decompose::periodic_as_commutator(&p_inv).unwrap();
    eprintln!("p witness: {:?} (a {} pieces, h {} pieces)", t0.elapsed(), a.piece_count(), h.piece_count());

    let t0 = Instant::now();
    let pp_inv = shrunk.p_prime.inverse().unwrap();
    let (a2, h2) = fliet::decompose::periodic_as_commutator(&pp_inv).unwrap();
    eprintln!("p' witness: {:?} (a {} pieces, h {} pieces)", t0.elapsed(), a2.piece_count(), h2.piece_count());

    let t0 = Instant::now();
    let c = fliet::fiet::Fiet::commutator(&a2, &h2).unwrap();
    eprintln!("replay [a2,h2]: {:?} ({} pieces)", t0.elapsed(), c.piece_count());
    assert_eq!(c, pp_inv);

    let t0 = Instant::now();
    let cert = fliet::decompose::commutators::CommutatorsStrategy.decompose(&f, &DecomposeOptions::default()).unwrap();
    eprintln!("full pipeline: {:?} ({} factors)", t0.elapsed(), cert.factors.len());

    let t0 = Instant::now();
    let v = fliet::verify::verify(&cert).unwrap();
    eprintln!("verify: {:?} ok={}", t0.elapsed(), v.ok());
}
