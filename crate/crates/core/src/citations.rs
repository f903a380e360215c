//! Bibliography table for the facts the toolkit cites rather than computes.
//!
//! Every check in a report and every catalog-assigned flag on a record names
//! one of these keys.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub key: &'static str,
    pub source: &'static str,
    pub claim: &'static str,
}

/// Key for values checked against an oracle in this crate's own tests.
pub const DERIVED_ORACLE: &str = "derived-oracle";

const TABLE: &[Citation] = &[
    Citation {
        key: DERIVED_ORACLE,
        source: "this toolkit",
        claim: "value recomputed by an independent routine in the test suite (cofactor determinants, SNF, rational arithmetic)",
    },
    Citation {
        key: "mayer-vietoris-excision",
        source: "this toolkit",
        claim: "a regular neighborhood of a genus h fiber plus r sphere sections meeting it once each has Euler characteristic (2 - 2h) + 2r - r",
    },
    Citation {
        key: "star-plumbing-equivalence",
        source: "plumbing calculus (Neumann)",
        claim: "the circle-bundle star with central genus h and leaves p_i bounds the same oriented 3-manifold as the star with central weight -r and (-2)-chains of length p_i - 1",
    },
    Citation {
        key: "openbook-boundary-twists",
        source: "open book decompositions",
        claim: "the open book with page of genus h and r boundary components and monodromy a product of boundary-parallel twist powers has Seifert invariants e0 = -r and legs (p_i, p_i - 1)",
    },
    Citation {
        key: "neumann-singularity-link",
        source: "Neumann, plumbing calculus",
        claim: "a Seifert fibered 3-manifold is the link of a normal surface singularity iff its rational Euler number is negative",
    },
    Citation {
        key: "grauert",
        source: "Grauert, contractibility criterion",
        claim: "a configuration of curves with negative definite intersection form can be blown down to a normal singularity",
    },
    Citation {
        key: "milnor-fillable-unique",
        source: "Caubel, Nemethi, Popescu-Pampu",
        claim: "a singularity link carries a unique Milnor fillable contact structure up to isomorphism",
    },
    Citation {
        key: "blowup-cp2",
        source: "standard",
        claim: "CP2 # k(-CP2) is simply connected with Euler characteristic 3 + k and signature 1 - k",
    },
    Citation {
        key: "hyperelliptic-lf",
        source: "standard (Gompf and Stipsicz)",
        claim: "the hyperelliptic genus g Lefschetz fibration has total space CP2 # (4g+5)(-CP2), 8g + 4 singular fibers and 4g + 4 disjoint (-1)-sphere sections",
    },
    Citation {
        key: "korkmaz-lf",
        source: "Korkmaz; Matsumoto for m = 1",
        claim: "Sigma_m x S2 # 8(-CP2) admits a genus 2m + 1 Lefschetz fibration with 2(2m+1) + 10 singular fibers and at least two disjoint (-1)-sphere sections",
    },
    Citation {
        key: "product-pi1",
        source: "standard",
        claim: "the fundamental group of Sigma_m x S2 # 8(-CP2) is the surface group of genus m",
    },
    Citation {
        key: "novikov",
        source: "Novikov additivity",
        claim: "signature is additive under gluing along closed 3-manifolds",
    },
    Citation {
        key: "fiber-sum-euler",
        source: "standard",
        claim: "the fiber sum of genus g fibrations has Euler characteristic chi_1 + chi_2 - 2(2 - 2g)",
    },
    Citation {
        key: "fiber-sum-section-sewing",
        source: "standard",
        claim: "matching sections of squares s and s' glue across a fiber sum to a section of square s + s'",
    },
    Citation {
        key: "fiber-sum-simply-connected",
        source: "standard (Gompf and Stipsicz)",
        claim: "a fiber sum of simply connected Lefschetz fibrations admitting sections is simply connected",
    },
    Citation {
        key: "twisted-fiber-sum-pi1",
        source: "Korkmaz; twisted fiber sums",
        claim: "the n-twisted fiber sum of two copies of the genus 2m + 1 fibration on Sigma_m x S2 # 8(-CP2) has fundamental group Z + Z/n",
    },
    Citation {
        key: "knot-surgery-sw",
        source: "Fintushel and Stern, knot surgery",
        claim: "knot surgery along an essential torus multiplies the Seiberg-Witten invariant by Delta_K(t^2)",
    },
    Citation {
        key: "knot-surgery-fiber-genus",
        source: "Fintushel and Stern, knot surgery",
        claim: "knot surgery with a fibered genus k knot along a torus meeting the fiber twice yields a genus g + 2k Lefschetz fibration",
    },
    Citation {
        key: "knot-surgery-homeomorphism",
        source: "Fintushel and Stern; Freedman",
        claim: "knot surgery preserves Euler characteristic and signature, and the homeomorphism type when the complement of the torus is simply connected",
    },
    Citation {
        key: "knot-surgery-pi1",
        source: "Seifert-Van Kampen",
        claim: "knot surgery along a torus whose loops are null-homotopic in the complement preserves the fundamental group",
    },
    Citation {
        key: "sw-nonvanishing",
        source: "Taubes; Fintushel and Stern",
        claim: "the base manifolds have nonvanishing Seiberg-Witten invariant, so distinct multipliers give non-diffeomorphic results",
    },
    Citation {
        key: "fibered-knot-certificate",
        source: "standard",
        claim: "a fibered knot has monic Alexander polynomial of span twice its genus; the converse is assumed for the supplied family",
    },
    Citation {
        key: "palf-stein-complement",
        source: "Loi and Piergallini; Stein handlebodies",
        claim: "removing a regular fiber and r sections from a Lefschetz fibration over S2 leaves an allowable Lefschetz fibration over D2, hence a Stein filling of the boundary open book",
    },
    Citation {
        key: "filling-simply-connected",
        source: "Seifert-Van Kampen",
        claim: "the complement in a simply connected fibration of a fiber and r sections is simply connected when at least one section is retained",
    },
    Citation {
        key: "filling-pi1-z-zn",
        source: "Seifert-Van Kampen",
        claim: "the complement of a fiber and one of the two sewn sections in the twisted sum keeps fundamental group Z + Z/n",
    },
    Citation {
        key: "det-zero-infinite-h1",
        source: "long exact sequence of the pair",
        claim: "a filling whose boundary has infinite first homology has degenerate intersection form, so its determinant is zero",
    },
    Citation {
        key: "finitely-many-homeomorphism-types",
        source: "Boyer",
        claim: "simply connected fillings of a fixed rational homology type with fixed boundary fall into finitely many homeomorphism types",
    },
    Citation {
        key: "twisted-family-homeomorphic",
        source: "Freedman-type classification; Luttinger surgery",
        claim: "the knot-surgered twisted fiber sums are homeomorphic to the untwisted-knot base manifold",
    },
    Citation {
        key: "milnor-fiber-betti",
        source: "Greuel and Steenbrink",
        claim: "a Milnor fiber of a normal surface singularity has vanishing first Betti number",
    },
    Citation {
        key: "construction-ranges",
        source: "this toolkit",
        claim: "parameter ranges of the constructions: r between 1 and 4g + 3 for the blown-up family, one retained section for the twisted family",
    },
];

pub fn all() -> &'static [Citation] {
    TABLE
}

pub fn resolve(key: &str) -> Option<&'static Citation> {
    TABLE.iter().find(|c| c.key == key)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_unique_and_resolvable() {
        let mut keys: Vec<_> = TABLE.iter().map(|c| c.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), TABLE.len());
        assert!(resolve(DERIVED_ORACLE).is_some());
        assert!(resolve("no-such-key").is_none());
    }
}
