use hall_cli::json::*;
use hall_core::canonical::CanonicalEngine;
use hall_core::hallmult::{mult_semisimple_q, mult_semisimple_twisted};
use hall_core::words::distinguished_word;
use hall_core::{CyclicMatrix, DimVector, LaurentPoly, QPoly, Word};
use serde_json::Value;

fn m(s: &str) -> CyclicMatrix {
    s.parse().unwrap()
}

fn reparse(v: &Value) -> Value {
    serde_json::from_str(&v.to_string()).unwrap()
}

const SAMPLES: &[&str] = &[
    "n=2;",
    "n=2;1,2:2;1,3:1;2,3:1",
    "n=2;1,2:1;1,5:1;1,6:1;1,9:1;1,10:1;2,4:2;2,5:1;2,9:1",
    "n=3;1,2:1;2,4:2;3,4:1",
];

#[test]
fn matrices_and_words() {
    for s in SAMPLES {
        let a = m(s);
        assert_eq!(a.to_string(), *s);
        assert_eq!(a.to_string().parse::<CyclicMatrix>().unwrap(), a);
        let w = distinguished_word(&a).unwrap();
        assert_eq!(Word::parse(a.n(), &w.to_string()).unwrap(), w);
    }
}

#[test]
fn polynomials() {
    let p = LaurentPoly::from_terms([(-4i64, 1i64), (-2, 1), (3, -7)]);
    assert_eq!(laurent_from_json(&reparse(&laurent_to_json(&p))).unwrap(), p);
    let q = QPoly::from_terms([(0u32, 1i64), (5, 2)]);
    assert_eq!(qpoly_from_json(&reparse(&qpoly_to_json(&q))).unwrap(), q);
    assert!(laurent_from_json(&serde_json::json!({"x": 1})).is_err());
}

#[test]
fn hall_vectors() {
    for s in SAMPLES {
        let a = m(s);
        let alpha = DimVector::new(vec![1; a.n()]).unwrap();
        let x = mult_semisimple_twisted(&alpha, &a).unwrap();
        assert_eq!(hall_vector_from_json::<LaurentPoly>(&reparse(&hall_vector_to_json(&x))).unwrap(), x);
        let y = mult_semisimple_q(&alpha, &a).unwrap();
        assert_eq!(hall_vector_from_json::<QPoly>(&reparse(&hall_vector_to_json(&y))).unwrap(), y);
    }
}

#[test]
fn canonical_elements() {
    let mut eng = CanonicalEngine::new();
    for s in ["n=2;1,2:2;1,3:1;2,3:1", "n=2;1,2:1;1,3:1;2,3:2", "n=3;1,2:1;2,4:2;3,4:1"] {
        let c = eng.canonical_element(&m(s)).unwrap();
        let v = canonical_to_json(&c);
        assert_eq!(canonical_from_json(&reparse(&v)).unwrap(), c);
    }
}

#[test]
fn tight_flag_is_checked() {
    let c = CanonicalEngine::new().canonical_element(&m("n=2;1,2:2;1,3:1;2,3:1")).unwrap();
    let mut v = canonical_to_json(&c);
    v["tight"] = Value::Bool(true);
    assert!(canonical_from_json(&v).is_err());
}
