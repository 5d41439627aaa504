use std::collections::BTreeMap;
use std::ops::Add;

use num_traits::Zero;

use super::BigRat;

pub(crate) fn add_into<K: Ord + Copy>(acc: &mut BTreeMap<K, BigRat>, k: K, c: &BigRat) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(&k);
            }
        }
        None => {
            acc.insert(k, c.clone());
        }
    }
}

pub(crate) fn add_maps<K: Ord + Copy>(
    a: &BTreeMap<K, BigRat>,
    b: &BTreeMap<K, BigRat>,
    negate_b: bool,
) -> BTreeMap<K, BigRat> {
    let mut out = a.clone();
    for (k, c) in b {
        if negate_b {
            add_into(&mut out, *k, &-c);
        } else {
            add_into(&mut out, *k, c);
        }
    }
    out
}

pub(crate) fn mul_maps<K: Ord + Copy + Add<Output = K>>(
    a: &BTreeMap<K, BigRat>,
    b: &BTreeMap<K, BigRat>,
) -> BTreeMap<K, BigRat> {
    let mut out = BTreeMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            add_into(&mut out, *ka + *kb, &(ca * cb));
        }
    }
    out
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl<'a, 'b> std::ops::Add<&'b $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'b $t) -> $t {
                <$t>::add_ref(self, o)
            }
        }
        impl<'a, 'b> std::ops::Sub<&'b $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'b $t) -> $t {
                <$t>::sub_ref(self, o)
            }
        }
        impl<'a, 'b> std::ops::Mul<&'b $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &'b $t) -> $t {
                <$t>::mul_ref(self, o)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                <$t>::add_ref(&self, &o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                <$t>::sub_ref(&self, &o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                <$t>::mul_ref(&self, &o)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg_ref(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg_ref(&self)
            }
        }
        impl std::ops::AddAssign<&$t> for $t {
            fn add_assign(&mut self, o: &$t) {
                *self = <$t>::add_ref(self, o);
            }
        }
        impl std::iter::Sum for $t {
            fn sum<I: Iterator<Item = $t>>(iter: I) -> $t {
                iter.fold(<$t>::zero(), |a, b| <$t>::add_ref(&a, &b))
            }
        }
    };
}

pub(crate) use forward_ops;
