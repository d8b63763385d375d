use std::fmt;

use super::{EvolutionFamily, Time};
use crate::diskmap::DiskMap;
use crate::error::{domain, Result};

/// A reverse evolution family on `[−b, −a]` with `f_{s,s} = id` and
/// `f_{s,u} ∘ f_{u,t} = f_{s,t}`, realized as `f_{s,t} = ω_{−t,−s}`.
#[derive(Clone)]
pub struct ReverseFamily<T: Time = f64> {
    start: T,
    end: T,
    forward: EvolutionFamily<T>,
}

/// Time-reversal dual of an evolution family.
pub fn reverse_dual<T: Time>(family: &EvolutionFamily<T>) -> ReverseFamily<T> {
    ReverseFamily {
        start: family.end().negated(),
        end: family.start().negated(),
        forward: family.clone(),
    }
}

impl<T: Time> ReverseFamily<T> {
    pub fn start(&self) -> &T {
        &self.start
    }

    pub fn end(&self) -> &T {
        &self.end
    }

    /// `f_{s,t} = ω_{−t,−s}`; requires `−b ≤ s ≤ t ≤ −a`.
    pub fn at(&self, s: &T, t: &T) -> Result<DiskMap> {
        if !(self.start.precedes(s) && s.precedes(t) && t.precedes(&self.end)) {
            return Err(domain(format!(
                "({s}, {t}) is not admissible on [{}, {}]",
                self.start, self.end
            )));
        }
        self.forward.at(&t.negated(), &s.negated())
    }

    /// Applies the duality again: `ω_{s,t} = f_{−t,−s}` on `[a, b]`.
    pub fn dual(&self) -> EvolutionFamily<T> {
        let reverse = self.clone();
        let label = format!("dual:{}", self.forward.label());
        EvolutionFamily::new(label, self.end.negated(), self.start.negated(), move |s, t| {
            reverse.at(&t.negated(), &s.negated())
        })
        .expect("negation preserves a < b")
    }
}

impl<T: Time> fmt::Debug for ReverseFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReverseFamily")
            .field("start", &self.start)
            .field("end", &self.end)
            .field("forward", &self.forward)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{linspace, make_radial};
    use num_complex::Complex64;

    #[test]
    fn radial_dual_is_radial_on_negated_interval() {
        let dual = reverse_dual(&make_radial(0.0, 1.0).unwrap());
        assert_eq!(*dual.start(), -1.0);
        assert_eq!(*dual.end(), 0.0);
        let z = Complex64::new(0.5, 0.1);
        let w = dual.at(&-0.8, &-0.3).unwrap().eval(z).unwrap();
        assert!((w - z * (-0.5f64).exp()).norm() < 1e-16);
    }

    #[test]
    fn diagonal_is_identity() {
        let dual = reverse_dual(&make_radial(0.0, 1.0).unwrap());
        let z = Complex64::new(0.5, 0.1);
        for t in linspace(-1.0, 0.0, 5) {
            assert_eq!(dual.at(&t, &t).unwrap().eval(z).unwrap(), z);
        }
    }

    #[test]
    fn reversed_composition_order() {
        let dual = reverse_dual(&make_radial(0.0, 1.0).unwrap());
        let z = Complex64::new(0.2, -0.4);
        let (s, u, t) = (-0.9, -0.5, -0.1);
        let lhs = dual
            .at(&s, &u)
            .unwrap()
            .after(&dual.at(&u, &t).unwrap())
            .eval(z)
            .unwrap();
        let rhs = dual.at(&s, &t).unwrap().eval(z).unwrap();
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn double_dual_round_trips() {
        let fam = make_radial(0.0, 1.0).unwrap();
        let back = reverse_dual(&fam).dual();
        assert_eq!(*back.start(), 0.0);
        assert_eq!(*back.end(), 1.0);
        assert_eq!(back.at(&0.2, &0.7).unwrap(), fam.at(&0.2, &0.7).unwrap());
    }

    #[test]
    fn order_violation_rejected() {
        let dual = reverse_dual(&make_radial(0.0, 1.0).unwrap());
        assert!(dual.at(&-0.2, &-0.4).is_err());
        assert!(dual.at(&0.0, &0.5).is_err());
    }
}
