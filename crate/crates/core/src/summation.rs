use num_complex::Complex64;

/// Neumaier's variant of Kahan summation, applied to each component.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

#[inline]
fn two_sum_step(acc: &mut (f64, f64), x: f64) {
    let (s, c) = *acc;
    let t = s + x;
    let err = if s.abs() >= x.abs() {
        (s - t) + x
    } else {
        (x - t) + s
    };
    *acc = (t, c + err);
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, z: Complex64) {
        two_sum_step(&mut self.re, z.re);
        two_sum_step(&mut self.im, z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Compensated sum of real terms.
pub(crate) fn sum_real<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = (0.0, 0.0);
    for x in terms {
        two_sum_step(&mut acc, x);
    }
    acc.0 + acc.1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_lost_by_naive_summation() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(sum_real(terms), 2.0);
        let naive: f64 = terms.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn complex_components_are_independent() {
        let mut acc = CompensatedSum::default();
        acc.add(Complex64::new(1e16, -1.0));
        acc.add(Complex64::new(1.0, 1e16));
        acc.add(Complex64::new(-1e16, -1e16));
        assert_eq!(acc.value(), Complex64::new(1.0, -1.0));
    }
}
