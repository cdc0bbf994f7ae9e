use std::fmt;
use std::str::FromStr;

use super::{Poset, PosetError};

/// Small posets with names, used as examples and fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedPoset {
    /// `k` totally ordered elements `c1 < ... < ck`.
    Chain,
    /// `k` pairwise incomparable elements.
    Antichain,
    /// Two minimal elements, each below both of two maximal elements.
    Butterfly,
    /// One minimal element below `r` pairwise incomparable maximal elements.
    V,
    /// Bottom, two incomparable middle elements, top.
    Diamond,
    /// An antichain of size `C(k, k/2)` strictly above a chain of `k/2`
    /// elements; `k` even.
    AntichainPlusChain,
}

impl NamedPoset {
    pub const ALL: [NamedPoset; 6] = [
        NamedPoset::Chain,
        NamedPoset::Antichain,
        NamedPoset::Butterfly,
        NamedPoset::V,
        NamedPoset::Diamond,
        NamedPoset::AntichainPlusChain,
    ];

    pub fn key(self) -> &'static str {
        match self {
            NamedPoset::Chain => "chain",
            NamedPoset::Antichain => "antichain",
            NamedPoset::Butterfly => "butterfly",
            NamedPoset::V => "v",
            NamedPoset::Diamond => "diamond",
            NamedPoset::AntichainPlusChain => "antichain_plus_chain",
        }
    }

    pub fn takes_parameter(self) -> bool {
        !matches!(self, NamedPoset::Butterfly | NamedPoset::Diamond)
    }

    pub fn description(self) -> &'static str {
        match self {
            NamedPoset::Chain => "k elements, totally ordered (k >= 1)",
            NamedPoset::Antichain => "k pairwise incomparable elements (k >= 1)",
            NamedPoset::Butterfly => "two minimals each below two maximals",
            NamedPoset::V => "one minimal below k incomparable maximals (k >= 1)",
            NamedPoset::Diamond => "bottom, two incomparable middles, top",
            NamedPoset::AntichainPlusChain => {
                "antichain of C(k, k/2) above a chain of k/2 (k even, 2..=8)"
            }
        }
    }
}

impl fmt::Display for NamedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for NamedPoset {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedPoset::ALL
            .into_iter()
            .find(|p| p.key() == s)
            .ok_or_else(|| PosetError::UnknownName(s.to_string()))
    }
}

fn bad(name: NamedPoset, reason: impl Into<String>) -> PosetError {
    PosetError::BadParameter {
        name: name.key().to_string(),
        reason: reason.into(),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Builds a catalog poset. `param` is required exactly when
/// [`NamedPoset::takes_parameter`] holds.
pub fn named_poset(name: NamedPoset, param: Option<usize>) -> Result<Poset, PosetError> {
    let k = match (name.takes_parameter(), param) {
        (true, Some(k)) => k,
        (true, None) => return Err(bad(name, "a size parameter is required")),
        (false, Some(_)) => return Err(bad(name, "takes no parameter")),
        (false, None) => 0,
    };
    let (elements, covers): (Vec<String>, Vec<(String, String)>) = match name {
        NamedPoset::Chain => {
            if k == 0 {
                return Err(bad(name, "k must be at least 1"));
            }
            let el: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
            let cov = el.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
            (el, cov)
        }
        NamedPoset::Antichain => {
            if k == 0 {
                return Err(bad(name, "k must be at least 1"));
            }
            ((1..=k).map(|i| format!("a{i}")).collect(), Vec::new())
        }
        NamedPoset::Butterfly => {
            let el = ["B1", "B2", "A1", "A2"].map(String::from).to_vec();
            let mut cov = Vec::new();
            for b in ["B1", "B2"] {
                for a in ["A1", "A2"] {
                    cov.push((b.to_string(), a.to_string()));
                }
            }
            (el, cov)
        }
        NamedPoset::V => {
            if k == 0 {
                return Err(bad(name, "k must be at least 1"));
            }
            let mut el = vec!["m".to_string()];
            let mut cov = Vec::new();
            for i in 1..=k {
                el.push(format!("u{i}"));
                cov.push(("m".to_string(), format!("u{i}")));
            }
            (el, cov)
        }
        NamedPoset::Diamond => {
            let el = ["bot", "l", "r", "top"].map(String::from).to_vec();
            let cov = [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")]
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .to_vec();
            (el, cov)
        }
        NamedPoset::AntichainPlusChain => {
            if k == 0 || k % 2 == 1 {
                return Err(bad(name, format!("k must be even and positive, got {k}")));
            }
            if k > 8 {
                return Err(bad(name, format!("k = {k} is too large (max 8)")));
            }
            let half = k / 2;
            let mut el: Vec<String> = (1..=half).map(|i| format!("c{i}")).collect();
            let mut cov: Vec<(String, String)> =
                el.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
            for i in 1..=binomial(k, half) {
                let a = format!("a{i}");
                cov.push((format!("c{half}"), a.clone()));
                el.push(a);
            }
            (el, cov)
        }
    };
    Poset::from_cover_relations(&elements, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_total() {
        let p = named_poset(NamedPoset::Chain, Some(4)).unwrap();
        assert_eq!(p.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert!(p.comparable(i, j));
            }
        }
    }

    #[test]
    fn v3_shape() {
        let p = named_poset(NamedPoset::V, Some(3)).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.minimal_elements(), vec![0]);
        assert_eq!(p.maximal_elements(), vec![1, 2, 3]);
        assert!(!p.comparable(1, 2));
    }

    #[test]
    fn antichain_plus_chain_4() {
        let p = named_poset(NamedPoset::AntichainPlusChain, Some(4)).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(p.maximal_elements().len(), 6);
        assert!(p.lt(0, 1));
        for a in 2..8 {
            assert!(p.lt(0, a) && p.lt(1, a));
            for b in 2..8 {
                assert_eq!(p.comparable(a, b), a == b);
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            named_poset(NamedPoset::AntichainPlusChain, Some(3)),
            Err(PosetError::BadParameter { .. })
        ));
        assert!(matches!(
            named_poset(NamedPoset::Chain, None),
            Err(PosetError::BadParameter { .. })
        ));
        assert!(matches!(
            named_poset(NamedPoset::Butterfly, Some(2)),
            Err(PosetError::BadParameter { .. })
        ));
        assert_eq!(
            "pentagon".parse::<NamedPoset>(),
            Err(PosetError::UnknownName("pentagon".into()))
        );
        assert_eq!("v".parse::<NamedPoset>(), Ok(NamedPoset::V));
    }
}
