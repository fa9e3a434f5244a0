#![allow(dead_code)]

use poincare_charges::exterior::{increasing_tuples, PForm};
use poincare_charges::poincare::{exp_algebra, LorentzMatrix};
use poincare_charges::{AlgebraElement, Bivector, DualElement, Event, MinkVector, PoincareElement};
use proptest::prelude::*;

pub fn comp() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

pub fn vector() -> impl Strategy<Value = MinkVector> {
    prop::array::uniform4(comp()).prop_map(MinkVector)
}

pub fn event() -> impl Strategy<Value = Event> {
    prop::array::uniform4(-5.0..5.0f64).prop_map(Event)
}

pub fn bivector() -> impl Strategy<Value = Bivector> {
    prop::array::uniform6(comp()).prop_map(Bivector::from_independent)
}

pub fn algebra() -> impl Strategy<Value = AlgebraElement> {
    (vector(), bivector()).prop_map(|(v, m)| AlgebraElement::new(v, m).unwrap())
}

pub fn dual() -> impl Strategy<Value = DualElement> {
    (vector(), bivector()).prop_map(|(p, j)| DualElement::new(p.lower(), j).unwrap())
}

pub fn velocity() -> impl Strategy<Value = MinkVector> {
    (prop::array::uniform3(-1.0..1.0f64), 0.0..0.95f64).prop_filter_map("nonzero direction", |(d, s)| {
        let n = d.iter().map(|c| c * c).sum::<f64>().sqrt();
        (n > 1e-3).then(|| MinkVector::from_velocity(d.map(|c| c * s / n)))
    })
}

/// Proper orthochronous elements: boost after rotation, plus translation.
pub fn group() -> impl Strategy<Value = PoincareElement> {
    (vector(), prop::array::uniform3(-1.0..1.0f64), -3.0..3.0f64, prop::array::uniform3(-1.0..1.0f64), 0.0..1.5f64)
        .prop_map(|(a, axis, angle, dir, rapidity)| {
            let l = LorentzMatrix::boost(rapidity, dir).compose(&LorentzMatrix::rotation(axis, angle));
            PoincareElement::new(a, l)
        })
}

/// Group elements reached through the exponential map.
pub fn group_exp() -> impl Strategy<Value = PoincareElement> {
    algebra().prop_map(|x| exp_algebra(&x.scale(0.5), 1.0).unwrap())
}

pub fn form(grade: usize) -> impl Strategy<Value = PForm> {
    let k = increasing_tuples(4, grade).len();
    prop::collection::vec(comp(), k).prop_map(move |c| {
        let mut it = c.into_iter();
        PForm::from_independent(4, grade, |_| it.next().unwrap())
    })
}
