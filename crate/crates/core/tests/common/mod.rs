#![allow(dead_code)]

use instanton::cli::{parse_input, AnyDocument, Document, Object};
use instanton::monad::MonadDatum;
use instanton::rank0::Rank0Datum;
use instanton::{NfElement, ProjectivePoint, Rational};

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> AnyDocument {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    parse_input(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn q_doc(name: &str) -> Document<Rational> {
    match fixture(name) {
        AnyDocument::Rational(d) => d,
        AnyDocument::NumberField(_) => panic!("{name} is not over Q"),
    }
}

pub fn nf_doc(name: &str) -> Document<NfElement> {
    match fixture(name) {
        AnyDocument::NumberField(d) => d,
        AnyDocument::Rational(_) => panic!("{name} is not over a number field"),
    }
}

pub fn q_monad(name: &str) -> MonadDatum<Rational> {
    match q_doc(name).object {
        Object::Monad(m) => m,
        Object::Rank0(_) => panic!("{name} is not a monad"),
    }
}

pub fn q_points(name: &str) -> Vec<ProjectivePoint<Rational>> {
    q_doc(name).points
}

pub fn q_rank0(name: &str) -> Rank0Datum<Rational> {
    match q_doc(name).object {
        Object::Rank0(z) => z,
        Object::Monad(_) => panic!("{name} is not a rank0 datum"),
    }
}

pub fn nf_monad(name: &str) -> (MonadDatum<NfElement>, Vec<ProjectivePoint<NfElement>>) {
    let d = nf_doc(name);
    match d.object {
        Object::Monad(m) => (m, d.points),
        Object::Rank0(_) => panic!("{name} is not a monad"),
    }
}
