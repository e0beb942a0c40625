//! Linking two constant-dimension codes through a rank-metric code.
//!
//! Given representing sets `M1` (matrices `k x n1`) and `M2` (`k x n2`) and
//! a rank-metric code `CR` in `F_q^{k x n2}`, the linked code lives in
//! `F_q^{n1 + n2}` and consists of three blocks:
//!
//! * left block — `rowspace(U | 0)` for each `U` in `M1`,
//! * right block — `rowspace(0 | U)` for each `U` in `M2`,
//! * paired block — `rowspace(U | M)` for each `U` in `M1` and each
//!   nonzero `M` in `CR`.
//!
//! With `CR` linear the result has `N = N2 + N1 * NR` codewords and minimum
//! distance exactly `min(d1, d2, 2 dR)`. The paired block depends on the
//! representative matrices, not only on their row spaces: different
//! representing sets of the same code yield linked codes with different
//! distance distributions (though identical `(n, N, k, d)`).

use crate::rankcode::RankMetricCode;
use crate::subspace::{ScRepSet, Subspace, SubspaceCode};
use crate::{Error, Matrix, Result, DEFAULT_PAIR_CAP};

/// Where a linked codeword came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkBlock {
    /// `rowspace(U | 0)`; `rep` indexes the left representing set.
    Left { rep: usize },
    /// `rowspace(0 | U)`; `rep` indexes the right representing set.
    Right { rep: usize },
    /// `rowspace(U | M)`; `rep` indexes the left representing set, `word`
    /// the rank-code word (nonzero).
    Paired { rep: usize, word: usize },
}

/// Options for [`link_with`].
#[derive(Clone, Copy, Debug)]
pub struct LinkOptions {
    /// Largest number of codeword pairs that will be brute-force checked;
    /// above this the distance stays predicted-only.
    pub verify_cap: u64,
    /// Accept a rank-metric component that is not linear. The distance
    /// formula is then no longer guaranteed (it is reported as predicted and
    /// checked only when verification runs and the zero word is present).
    pub allow_nonlinear: bool,
    /// Skip the pairwise distance verification even when the pair count fits
    /// under `verify_cap`; the constituent distances (and with them the
    /// predicted minimum) are still computed.
    pub skip_verify: bool,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions {
            verify_cap: DEFAULT_PAIR_CAP,
            allow_nonlinear: false,
            skip_verify: false,
        }
    }
}

/// A linked code together with its provenance and distance bookkeeping.
#[derive(Clone, Debug)]
pub struct LinkageCode {
    code: SubspaceCode,
    reps: Vec<Matrix>,
    tags: Vec<LinkBlock>,
    k: usize,
    n1: usize,
    n2: usize,
    predicted_distance: usize,
    verified_distance: Option<usize>,
}

impl LinkageCode {
    /// The linked subspace code.
    pub fn code(&self) -> &SubspaceCode {
        &self.code
    }

    pub fn into_code(self) -> SubspaceCode {
        self.code
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// Common row count of all codewords.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Ambient dimension of the left factor.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Ambient dimension of the right factor.
    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Total ambient dimension `n1 + n2`.
    pub fn ambient(&self) -> usize {
        self.n1 + self.n2
    }

    /// Block provenance of codeword `i`.
    pub fn tag(&self, i: usize) -> LinkBlock {
        self.tags[i]
    }

    pub fn tags(&self) -> &[LinkBlock] {
        &self.tags
    }

    /// `min(d1, d2, 2 dR)`.
    pub fn predicted_distance(&self) -> usize {
        self.predicted_distance
    }

    /// Brute-forced minimum distance, when the pair count fit under the cap.
    pub fn verified_distance(&self) -> Option<usize> {
        self.verified_distance
    }

    /// Verified distance if available, predicted otherwise.
    pub fn distance(&self) -> usize {
        self.verified_distance.unwrap_or(self.predicted_distance)
    }

    /// The concatenated generator matrices `(U|0)`, `(0|U)`, `(U|M)` in
    /// codeword order — full-row-rank representatives of this code, suitable
    /// as the left factor of a further linking step.
    pub fn representatives(&self) -> ScRepSet {
        ScRepSet::from_matrices(self.reps.clone())
            .expect("linked codewords are distinct with full-rank generators")
    }
}

/// Pure parameter arithmetic for a linked code:
/// `(n1 + n2, N2 + N1 * NR, k, min(d1, d2, 2 dR))`, saturating at
/// `u128::MAX`.
pub fn predicted_params(
    n1_len: u128,
    d1: usize,
    n2_len: u128,
    d2: usize,
    nr_len: u128,
    dr: usize,
    n1: usize,
    n2: usize,
    k: usize,
) -> (usize, u128, usize, usize) {
    let n = n1 + n2;
    let size = n2_len.saturating_add(n1_len.saturating_mul(nr_len));
    let d = d1.min(d2).min(2 * dr);
    (n, size, k, d)
}

/// Links two representing sets through a rank-metric code; see the module
/// docs for the construction. Defaults: linear `CR` required, verification
/// capped at [`DEFAULT_PAIR_CAP`] pairs.
pub fn link(m1: &ScRepSet, m2: &ScRepSet, cr: &RankMetricCode) -> Result<LinkageCode> {
    link_with(m1, m2, cr, LinkOptions::default())
}

/// [`link`] with explicit options.
pub fn link_with(
    m1: &ScRepSet,
    m2: &ScRepSet,
    cr: &RankMetricCode,
    opts: LinkOptions,
) -> Result<LinkageCode> {
    let field = m1.field().clone();
    for other in [m2.field(), cr.field()] {
        if *other != field {
            return Err(Error::MixedFields {
                left: field.q(),
                right: other.q(),
            });
        }
    }
    let k = m1.k();
    if m2.k() != k {
        return Err(Error::ShapeMismatch {
            op: "link",
            need: format!("right representatives with {k} rows"),
            got: format!("{}", m2.k()),
        });
    }
    let (n1, n2) = (m1.ambient(), m2.ambient());
    if cr.k() != k || cr.m() != n2 {
        return Err(Error::ShapeMismatch {
            op: "link",
            need: format!("rank code of shape {k}x{n2}"),
            got: format!("{}x{}", cr.k(), cr.m()),
        });
    }
    if !cr.is_linear() && !opts.allow_nonlinear {
        return Err(Error::NotLinear(
            "the linked distance formula needs a linear rank-metric component \
             (set allow_nonlinear to build anyway)"
                .into(),
        ));
    }

    let d1 = m1.code().code_distance_capped(opts.verify_cap)?;
    let d2 = m2.code().code_distance_capped(opts.verify_cap)?;
    let dr = cr.distance_capped(opts.verify_cap)?;
    let predicted = d1.min(d2).min(2 * dr);

    let mut code = SubspaceCode::new(&field, n1 + n2);
    let mut reps = Vec::new();
    let mut tags = Vec::new();
    let zero_right = Matrix::zero(&field, k, n2);
    for (i, u) in m1.iter().enumerate() {
        let gen = u.hconcat(&zero_right)?;
        code.push(Subspace::from_matrix(&gen))?;
        reps.push(gen);
        tags.push(LinkBlock::Left { rep: i });
    }
    let zero_left = Matrix::zero(&field, k, n1);
    for (j, u) in m2.iter().enumerate() {
        let gen = zero_left.hconcat(u)?;
        code.push(Subspace::from_matrix(&gen))?;
        reps.push(gen);
        tags.push(LinkBlock::Right { rep: j });
    }
    for (i, u) in m1.iter().enumerate() {
        for (l, m) in cr.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let gen = u.hconcat(m)?;
            code.push(Subspace::from_matrix(&gen))?;
            reps.push(gen);
            tags.push(LinkBlock::Paired { rep: i, word: l });
        }
    }

    let zero_in_cr = cr.iter().any(Matrix::is_zero);
    if zero_in_cr {
        debug_assert_eq!(
            code.len() as u128,
            m2.len() as u128 + m1.len() as u128 * cr.len() as u128
        );
    }

    let n_words = code.len() as u128;
    let pairs = n_words * (n_words - 1) / 2;
    let verified_distance = if !opts.skip_verify && pairs <= opts.verify_cap as u128 {
        let (actual, wi, wj) = code.min_distance_pair(opts.verify_cap)?;
        if zero_in_cr {
            // every term of the minimum witnessed by an actual pair
            let mut witnessed = 2 * k;
            if m1.len() >= 2 {
                witnessed = witnessed.min(d1);
            }
            if m2.len() >= 2 {
                witnessed = witnessed.min(d2);
            }
            if cr.len() >= 2 {
                witnessed = witnessed.min(2 * dr);
            }
            let exact = witnessed == predicted;
            if actual < predicted || (exact && actual != predicted) || actual > witnessed {
                return Err(Error::DistanceMismatch {
                    predicted,
                    found: actual,
                    i: wi,
                    j: wj,
                });
            }
        }
        Some(actual)
    } else {
        None
    };

    Ok(LinkageCode {
        code,
        reps,
        tags,
        k,
        n1,
        n2,
        predicted_distance: predicted,
        verified_distance,
    })
}

/// [`link`] for plain subspace codes: representatives are taken to be the
/// canonical reduced-echelon bases. This is one choice among many — other
/// representatives of the same codes can give different distance
/// distributions.
pub fn link_codes(
    c1: &SubspaceCode,
    c2: &SubspaceCode,
    cr: &RankMetricCode,
    opts: LinkOptions,
) -> Result<LinkageCode> {
    link_with(
        &ScRepSet::from_code(c1)?,
        &ScRepSet::from_code(c2)?,
        cr,
        opts,
    )
}

/// Links two lifted maximum-rank-distance codes, using a third one as the
/// rank-metric component: ambient `n1 + n2` (both at least `2k`), subspace
/// distance `2d`, and `q^{(n2-k)(k-d+1)} + q^{(n1+n2-k)(k-d+1)}` codewords —
/// strictly more than the single lifted code of the same total length.
pub fn mrd_linkage(q: u64, k: usize, d: usize, n1: usize, n2: usize) -> Result<LinkageCode> {
    mrd_linkage_with(q, k, d, n1, n2, LinkOptions::default())
}

/// [`mrd_linkage`] with explicit options.
pub fn mrd_linkage_with(
    q: u64,
    k: usize,
    d: usize,
    n1: usize,
    n2: usize,
    opts: LinkOptions,
) -> Result<LinkageCode> {
    if n1 < 2 * k || n2 < 2 * k {
        return Err(Error::InvalidParams(format!(
            "both segment lengths must be at least 2k = {} (got {n1}, {n2})",
            2 * k
        )));
    }
    let field = crate::FiniteField::from_order(q)?;
    let c1 = crate::rankcode::lift(&crate::rankcode::gabidulin(&field, k, n1 - k, d)?)?;
    let c2 = crate::rankcode::lift(&crate::rankcode::gabidulin(&field, k, n2 - k, d)?)?;
    let cr = crate::rankcode::gabidulin(&field, k, n2, d)?;
    link_codes(&c1, &c2, &cr, opts)
}
