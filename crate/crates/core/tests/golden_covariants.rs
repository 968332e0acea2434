use apolar_core::covariant::{catalog, evaluate_family, Evaluator};
use apolar_core::poly::{parse_form, segre_pullback, Space};
use apolar_core::Form;
use apolar_core::Rational;

mod common;
use common::{CUBIC, QUARTIC};

fn proportional(a: &Form<Rational>, b: &Form<Rational>) -> bool {
    a.ratio_to(b).is_some()
}

#[test]
fn bicubic_covariants_match_reference_values() {
    let e = parse_form(CUBIC, &Space::lift(4)).unwrap();
    let f = segre_pullback(&e).unwrap();
    let vals = evaluate_family(&catalog::genus4(), &[f]).unwrap();
    let sp = Space::double_binary();
    let expected = [
        "-44*x0*u0 - 17*x0*u1 - 25*x1*u0 - 17*x1*u1",
        "9*x0*u0 - 107*x0*u1 - 88*x1*u0 - 24*x1*u1",
        "-620*x0*u0 - 1937*x0*u1 - 1129*x1*u0 + 181*x1*u1",
        "25889*x0*u0 - 5563*x0*u1 - 19056*x1*u0 + 1328*x1*u1",
    ];
    for (v, s) in vals.iter().zip(expected) {
        assert!(proportional(v, &parse_form(s, &sp).unwrap()), "{v} vs {s}");
    }
}

#[test]
fn quartic_contravariants_match_reference_values() {
    let f = parse_form(QUARTIC, &Space::primal(3)).unwrap();
    let cat = catalog::genus3();
    let mut ev = Evaluator::new(vec![f]);
    let sp = Space::dual_space(3);
    let expected = [
        "-36028900960739935302662*w0 + 2546868783781471003910*w1 - 207634621252481717745*w2",
        "-167266167826007043607549539758*w0 + 11957094310556682023883659540*w1 - 996728625589442333471190105*w2",
        "-2137425487531362504044770*w0 + 192739452116090004098632*w1 - 4823065036939209106179*w2",
    ];
    for (p, s) in cat.family.iter().zip(expected) {
        let v = ev.form(p).unwrap();
        assert!(proportional(&v, &parse_form(s, &sp).unwrap()), "{v} vs {s}");
    }
}
