use apolar_core::pipeline::{
    reconstruct_binary_even, reconstruct_binary_odd, reconstruct_genus3, reconstruct_genus4_rank3,
    reconstruct_genus4_rank4, reconstruct_sum_6_4, Options, Reconstruction,
};
use apolar_core::poly::Space;
use apolar_core::sample::{random_form, rng, SampleRng};
use apolar_core::{Error, Form, Rational};

fn binary(k: u32, r: &mut SampleRng) -> Form<Rational> {
    random_form(&Space::binary(), &[k], 20, r)
}

fn check(label: &str, out: apolar_core::Result<Reconstruction>) -> Reconstruction {
    let r = out.unwrap_or_else(|e| panic!("{label}: {e}"));
    assert!(r.certificate.verified, "{label}: {r:?}");
    r
}

#[test]
fn odd_binary_quintics() {
    let mut r = rng(501);
    for i in 0..10 {
        let out = check(&format!("quintic {i}"), reconstruct_binary_odd(&binary(5, &mut r), &Options::default()));
        assert!(out.record.is_empty());
    }
}

#[test]
fn odd_binary_septic() {
    check("septic", reconstruct_binary_odd(&binary(7, &mut rng(7)), &Options::default()));
}

#[test]
fn even_binary_sextics() {
    let mut r = rng(601);
    let mut extended = 0;
    for i in 0..10 {
        let out = check(&format!("sextic {i}"), reconstruct_binary_even(&binary(6, &mut r), &Options::default()));
        extended += usize::from(!out.record.is_empty());
    }
    println!("{extended} of 10 sextics needed a quadratic extension");
}

#[test]
fn even_binary_octic() {
    check("octic", reconstruct_binary_even(&binary(8, &mut rng(8)), &Options::default()));
}

#[test]
fn sextic_quartic_pairs() {
    let mut r = rng(641);
    for i in 0..10 {
        let (f6, f4) = (binary(6, &mut r), binary(4, &mut r));
        check(&format!("pair {i}"), reconstruct_sum_6_4(&f6, &f4, &Options::default()));
    }
}

#[test]
fn rank3_genus4_models() {
    let mut r = rng(643);
    for i in 0..3 {
        let (f6, f4) = (binary(6, &mut r), binary(4, &mut r));
        check(&format!("rank-3 model {i}"), reconstruct_genus4_rank3(&f6, &f4, &Options::default()));
    }
}

#[test]
fn plane_quartics() {
    let mut r = rng(301);
    for i in 0..5 {
        let f = random_form(&Space::primal(3), &[4], 20, &mut r);
        let out = check(&format!("quartic {i}"), reconstruct_genus3(&f, &Options::default()));
        assert!(out.record.is_empty());
    }
}

#[test]
fn rank4_genus4_models() {
    let mut r = rng(401);
    let mut done = 0;
    let mut methods = Vec::new();
    while done < 5 {
        let q = random_form(&Space::lift(4), &[2], 5, &mut r);
        let e = random_form(&Space::lift(4), &[3], 5, &mut r);
        match reconstruct_genus4_rank4(&q, &e, &Options::default()) {
            Err(Error::WrongRank(_)) => continue,
            out => {
                let out = check(&format!("model {done}"), out);
                if out.record.entries.len() < 2 {
                    assert!(out.certificate.method.starts_with("re-pullback"), "{:?}", out.certificate);
                }
                methods.push(out.certificate.method.clone());
                done += 1;
            }
        }
    }
    println!("certificates: {methods:?}");
}

#[test]
fn split_genus4_models() {
    let mut r = rng(409);
    let mut done = 0;
    while done < 3 {
        let l: Vec<Form<Rational>> = (0..4).map(|_| random_form(&Space::lift(4), &[1], 3, &mut r)).collect();
        let q = l[0].mul(&l[3]).unwrap().sub(&l[1].mul(&l[2]).unwrap()).unwrap();
        let e = random_form(&Space::lift(4), &[3], 5, &mut r);
        match reconstruct_genus4_rank4(&q, &e, &Options::default()) {
            Err(Error::WrongRank(_)) => continue,
            out => {
                let out = check(&format!("split model {done}"), out);
                assert!(out.record.is_empty());
                assert!(out.certificate.method.starts_with("re-pullback"), "{:?}", out.certificate);
                done += 1;
            }
        }
    }
}
