//! Catalog of scaling/wavelet filter pairs for the supported wavelet families.
//!
//! Filters are stored with the indexing convention of the two-scale relations
//! `phi(x) = sum_k h[k] phi(2x - k)` and `psi(x) = sum_k g[k] phi(2x - k)`,
//! `k = 0..len`. Families whose coefficients have a closed form (splines,
//! coiflets) are evaluated from that form at full double precision.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the seventeen supported wavelet families. Names are matched
/// case-sensitively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    CW2,
    CW3,
    CW4,
    CDF97,
    CDF97d,
    CDF53,
    Short4,
    Short3,
    Short2,
    Db3,
    Db4,
    Db5,
    Sym3,
    Sym4,
    Sym5,
    Coif26,
    Coif38,
}

impl Family {
    pub const ALL: [Family; 17] = [
        Family::CW2,
        Family::CW3,
        Family::CW4,
        Family::CDF97,
        Family::CDF97d,
        Family::CDF53,
        Family::Short4,
        Family::Short3,
        Family::Short2,
        Family::Db3,
        Family::Db4,
        Family::Db5,
        Family::Sym3,
        Family::Sym4,
        Family::Sym5,
        Family::Coif26,
        Family::Coif38,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CW2 => "CW2",
            Family::CW3 => "CW3",
            Family::CW4 => "CW4",
            Family::CDF97 => "CDF97",
            Family::CDF97d => "CDF97d",
            Family::CDF53 => "CDF53",
            Family::Short4 => "Short4",
            Family::Short3 => "Short3",
            Family::Short2 => "Short2",
            Family::Db3 => "Db3",
            Family::Db4 => "Db4",
            Family::Db5 => "Db5",
            Family::Sym3 => "Sym3",
            Family::Sym4 => "Sym4",
            Family::Sym5 => "Sym5",
            Family::Coif26 => "Coif26",
            Family::Coif38 => "Coif38",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::CW2 => "Chui-Wang linear spline wavelet",
            Family::CW3 => "Chui-Wang quadratic spline wavelet",
            Family::CW4 => "Chui-Wang cubic spline wavelet",
            Family::CDF97 => "primal CDF 9/7 wavelet",
            Family::CDF97d => "dual CDF 9/7 wavelet",
            Family::CDF53 => "primal CDF 5/3 wavelet",
            Family::Short4 => "cubic spline wavelet, short support, 4 vanishing moments",
            Family::Short3 => "quadratic spline wavelet, short support, 3 vanishing moments",
            Family::Short2 => "linear spline wavelet, short support, 2 vanishing moments",
            Family::Db3 => "Daubechies wavelet, 3 vanishing moments",
            Family::Db4 => "Daubechies wavelet, 4 vanishing moments",
            Family::Db5 => "Daubechies wavelet, 5 vanishing moments",
            Family::Sym3 => "symlet, 3 vanishing moments",
            Family::Sym4 => "symlet, 4 vanishing moments",
            Family::Sym5 => "symlet, 5 vanishing moments",
            Family::Coif26 => "coiflet, 2 vanishing moments, support length 6",
            Family::Coif38 => "coiflet, 3 vanishing moments, support length 8",
        }
    }

    /// Number of vanishing moments of the wavelet.
    pub fn vanishing_moments(self) -> usize {
        match self {
            Family::CW2 | Family::CDF53 | Family::Short2 | Family::Coif26 => 2,
            Family::CW3 | Family::Short3 | Family::Db3 | Family::Sym3 | Family::Coif38 => 3,
            Family::CW4 | Family::CDF97 | Family::CDF97d | Family::Short4 => 4,
            Family::Db4 | Family::Sym4 => 4,
            Family::Db5 | Family::Sym5 => 5,
        }
    }

    /// True for the families generating an orthonormal basis.
    pub fn is_orthonormal(self) -> bool {
        matches!(
            self,
            Family::Db3
                | Family::Db4
                | Family::Db5
                | Family::Sym3
                | Family::Sym4
                | Family::Sym5
                | Family::Coif26
                | Family::Coif38
        )
    }

    /// True for the families whose scaling function is a B-spline.
    pub fn is_spline(self) -> bool {
        matches!(
            self,
            Family::CW2
                | Family::CW3
                | Family::CW4
                | Family::CDF53
                | Family::Short2
                | Family::Short3
                | Family::Short4
        )
    }

    pub fn filters(self) -> FilterPair {
        let (h, g) = match self {
            Family::CW2 => (
                vec![0.5, 1.0, 0.5],
                scaled(&[1.0, -6.0, 10.0, -6.0, 1.0], 12.0),
            ),
            Family::CW3 => (
                vec![0.25, 0.75, 0.75, 0.25],
                scaled(
                    &[1.0, -29.0, 147.0, -303.0, 303.0, -147.0, 29.0, -1.0],
                    480.0,
                ),
            ),
            Family::CW4 => (
                vec![0.125, 0.5, 0.75, 0.5, 0.125],
                scaled(
                    &[
                        1.0, -124.0, 1677.0, -7904.0, 18482.0, -24264.0, 18482.0, -7904.0, 1677.0,
                        -124.0, 1.0,
                    ],
                    2520.0,
                ),
            ),
            Family::CDF97 => (
                vec![
                    -0.045635881557,
                    -0.028771763114,
                    0.295635881557,
                    0.557543526229,
                    0.295635881557,
                    -0.028771763114,
                    -0.045635881557,
                ],
                vec![
                    0.026748757411,
                    0.016864118443,
                    -0.078223266529,
                    -0.266864118443,
                    0.602949018236,
                    -0.266864118443,
                    -0.078223266529,
                    0.016864118443,
                    0.026748757411,
                ],
            ),
            Family::CDF97d => (
                vec![
                    0.026748757411,
                    -0.016864118443,
                    -0.078223266529,
                    0.266864118443,
                    0.602949018236,
                    0.266864118443,
                    -0.078223266529,
                    -0.016864118443,
                    0.026748757411,
                ],
                vec![
                    0.045635881557,
                    -0.028771763114,
                    -0.295635881557,
                    0.557543526229,
                    -0.295635881557,
                    -0.028771763114,
                    0.045635881557,
                ],
            ),
            Family::CDF53 => (
                vec![0.5, 1.0, 0.5],
                vec![-0.125, -0.25, 0.75, -0.25, -0.125],
            ),
            Family::Short4 => (
                vec![0.125, 0.5, 0.75, 0.5, 0.125],
                vec![0.125, -0.5, 0.75, -0.5, 0.125],
            ),
            Family::Short3 => (
                vec![0.25, 0.75, 0.75, 0.25],
                vec![-0.25, 0.75, -0.75, 0.25],
            ),
            Family::Short2 => (vec![0.5, 1.0, 0.5], vec![-0.5, 1.0, -0.5]),
            Family::Db3 | Family::Sym3 => (
                vec![
                    0.035226291882101,
                    -0.085441273882241,
                    -0.135011020010391,
                    0.459877502119331,
                    0.806891509313339,
                    0.332670552950957,
                ],
                vec![
                    -0.332670552950957,
                    0.806891509313339,
                    -0.459877502119331,
                    -0.135011020010391,
                    0.085441273882241,
                    0.035226291882101,
                ],
            ),
            Family::Db4 => (
                vec![
                    0.162901714025620,
                    0.505472857545650,
                    0.446100069123190,
                    -0.019787513117910,
                    -0.132253583684370,
                    0.021808150237390,
                    0.023251800535560,
                    -0.007493494665130,
                ],
                negated(&flipped(&[
                    0.162901714025620,
                    -0.505472857545650,
                    0.446100069123190,
                    0.019787513117910,
                    -0.132253583684370,
                    -0.021808150237390,
                    0.023251800535560,
                    0.007493494665130,
                ])),
            ),
            Family::Db5 => (
                vec![
                    0.003335725285002,
                    -0.012580751999016,
                    -0.006241490213012,
                    0.077571493840065,
                    -0.032244869585030,
                    -0.242294887066190,
                    0.138428145901103,
                    0.724308528438574,
                    0.603829269797473,
                    0.160102397974125,
                ],
                vec![
                    -0.160102397974125,
                    0.603829269797473,
                    -0.724308528438574,
                    0.138428145901103,
                    0.242294887066190,
                    -0.032244869585030,
                    -0.077571493840065,
                    -0.006241490213012,
                    0.012580751999016,
                    0.003335725285002,
                ],
            ),
            Family::Sym4 => (
                vec![
                    0.022785172948000,
                    -0.008912350720850,
                    -0.070158812089500,
                    0.210617267102000,
                    0.568329121705000,
                    0.351869534328000,
                    -0.020955482562550,
                    -0.053574450709000,
                ],
                flipped(&[
                    0.022785172948000,
                    0.008912350720850,
                    -0.070158812089500,
                    -0.210617267102000,
                    0.568329121705000,
                    -0.351869534328000,
                    -0.020955482562550,
                    0.053574450709000,
                ]),
            ),
            Family::Sym5 => (
                vec![
                    0.027333068345078,
                    0.029519490925775,
                    -0.039134249302383,
                    0.199397533977394,
                    0.723407690402421,
                    0.633978963458212,
                    0.016602105764522,
                    -0.175328089908450,
                    -0.021101834024759,
                    0.019538882735287,
                ],
                vec![
                    -0.019538882735287,
                    -0.021101834024759,
                    0.175328089908450,
                    0.016602105764522,
                    -0.633978963458212,
                    0.723407690402421,
                    -0.199397533977394,
                    -0.039134249302383,
                    -0.029519490925775,
                    0.027333068345078,
                ],
            ),
            Family::Coif26 => {
                let r = 15f64.sqrt();
                (
                    scaled(
                        &[
                            9.0 - r,
                            13.0 + r,
                            6.0 + 2.0 * r,
                            6.0 - 2.0 * r,
                            1.0 - r,
                            -3.0 + r,
                        ],
                        32.0,
                    ),
                    negated(&flipped(&scaled(
                        &[
                            9.0 - r,
                            -13.0 - r,
                            6.0 + 2.0 * r,
                            -6.0 + 2.0 * r,
                            1.0 - r,
                            3.0 - r,
                        ],
                        32.0,
                    ))),
                )
            }
            Family::Coif38 => {
                let r = 7f64.sqrt();
                (
                    vec![
                        -1.0 / 32.0 - r / 128.0,
                        -3.0 / 128.0,
                        9.0 / 32.0 + 3.0 * r / 128.0,
                        73.0 / 128.0,
                        9.0 / 32.0 - 3.0 * r / 128.0,
                        -9.0 / 128.0,
                        -1.0 / 32.0 + r / 128.0,
                        3.0 / 128.0,
                    ],
                    negated(&flipped(&[
                        -1.0 / 32.0 - r / 128.0,
                        3.0 / 128.0,
                        9.0 / 32.0 + 3.0 * r / 128.0,
                        -73.0 / 128.0,
                        9.0 / 32.0 - 3.0 * r / 128.0,
                        9.0 / 128.0,
                        -1.0 / 32.0 + r / 128.0,
                        -3.0 / 128.0,
                    ])),
                )
            }
        };
        FilterPair { h, g }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Scaling filter `h` and wavelet filter `g` of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterPair {
    pub h: Vec<f64>,
    pub g: Vec<f64>,
}

impl FilterPair {
    /// Support length `K` of the scaling function.
    pub fn scaling_support(&self) -> usize {
        self.h.len().saturating_sub(1)
    }

    /// `M = len(g) - 1`.
    pub fn wavelet_order(&self) -> usize {
        self.g.len().saturating_sub(1)
    }

    /// Twice the support length of the wavelet, `K + M`.
    pub fn wavelet_support_doubled(&self) -> usize {
        self.scaling_support() + self.wavelet_order()
    }
}

/// Looks up a family by name. `None` plays the role of an invalid-name flag;
/// callers decide whether that is an error.
pub fn filters(name: &str) -> Option<FilterPair> {
    name.parse::<Family>().ok().map(Family::filters)
}

/// Rescales `h` so that its entries sum to 2.
pub fn normalize_scaling_filter(h: &[f64]) -> Result<Vec<f64>> {
    let sum: f64 = h.iter().sum();
    if sum == 0.0 || !sum.is_finite() {
        return Err(Error::DegenerateFilter);
    }
    Ok(h.iter().map(|v| 2.0 * v / sum).collect())
}

fn scaled(v: &[f64], d: f64) -> Vec<f64> {
    v.iter().map(|x| x / d).collect()
}

fn flipped(v: &[f64]) -> Vec<f64> {
    v.iter().rev().copied().collect()
}

fn negated(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short3_filters() {
        let p = filters("Short3").unwrap();
        assert_eq!(p.h, vec![0.25, 0.75, 0.75, 0.25]);
        assert_eq!(p.g, vec![-0.25, 0.75, -0.75, 0.25]);
    }

    #[test]
    fn cw2_filters() {
        let p = filters("CW2").unwrap();
        assert_eq!(p.h, vec![0.5, 1.0, 0.5]);
        let expected = [1.0, -6.0, 10.0, -6.0, 1.0].map(|v| v / 12.0);
        assert_eq!(p.g, expected.to_vec());
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(filters("Gauss").is_none());
        assert!(filters("short3").is_none());
        assert!(filters("").is_none());
        assert!(matches!("db4".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_scaling_filter(&[0.5, 1.0, 0.5]).unwrap(), vec![0.5, 1.0, 0.5]);
        assert_eq!(normalize_scaling_filter(&[1.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(normalize_scaling_filter(&[0.25, 0.25]).unwrap(), vec![1.0, 1.0]);
        assert!(matches!(
            normalize_scaling_filter(&[1.0, -1.0]),
            Err(Error::DegenerateFilter)
        ));
    }

    #[test]
    fn support_lengths() {
        assert_eq!(Family::Coif26.filters().h.len(), 6);
        assert_eq!(Family::Coif38.filters().h.len(), 8);
        for f in Family::ALL {
            let p = f.filters();
            assert!(p.scaling_support() >= 1);
            assert_eq!(p.wavelet_support_doubled() % 2, 0, "{f}");
        }
    }
}
