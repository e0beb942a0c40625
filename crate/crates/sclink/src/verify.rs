//! Claim checking for code files: parse a subspace-code or rank-code file,
//! run a list of claims against it, and report pass/fail per claim with a
//! witness for every failure (the offending codeword pair, the uncovered
//! vector, or the disjoint subspace that defeats maximality).

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rankcode::RankMetricCode;
use crate::spreads::{is_partial_spread, is_spread, maximality_witness};
use crate::subspace::{Subspace, SubspaceCode};

/// A checkable statement about a code file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Exact number of codewords.
    Size(u128),
    /// Every codeword has this dimension (row count for rank codes).
    ConstantDim(usize),
    /// Exact minimum distance (subspace distance for subspace codes, rank
    /// distance for rank-metric codes).
    Distance(usize),
    /// All pairwise intersections are trivial.
    PartialSpread,
    /// Partial spread covering every nonzero vector.
    Spread,
    /// No further subspace of the same dimension can be added.
    Maximal,
    /// Rank-metric code meets the size bound `q^(m(k-d+1))` for its distance.
    Mrd,
    /// The words form an additively closed set (a linear code).
    Linear,
}

impl Claim {
    /// Parses the command-line form: `size=N`, `dim=K`, `distance=D`,
    /// `partial-spread`, `spread`, `maximal`, `mrd`, `linear`.
    pub fn parse(s: &str) -> Result<Claim> {
        let bad = |what: &str| Error::Parse(format!("bad claim {s:?}: {what}"));
        if let Some((key, value)) = s.split_once('=') {
            let value = value.trim();
            return match key.trim() {
                "size" => Ok(Claim::Size(
                    value.parse().map_err(|_| bad("size needs an integer"))?,
                )),
                "dim" => Ok(Claim::ConstantDim(
                    value.parse().map_err(|_| bad("dim needs an integer"))?,
                )),
                "distance" => Ok(Claim::Distance(
                    value.parse().map_err(|_| bad("distance needs an integer"))?,
                )),
                _ => Err(bad("unknown key")),
            };
        }
        match s.trim() {
            "partial-spread" => Ok(Claim::PartialSpread),
            "spread" => Ok(Claim::Spread),
            "maximal" => Ok(Claim::Maximal),
            "mrd" => Ok(Claim::Mrd),
            "linear" => Ok(Claim::Linear),
            _ => Err(bad(
                "expected size=N, dim=K, distance=D, partial-spread, spread, maximal, mrd, or linear",
            )),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Size(n) => write!(f, "size={n}"),
            Claim::ConstantDim(k) => write!(f, "dim={k}"),
            Claim::Distance(d) => write!(f, "distance={d}"),
            Claim::PartialSpread => write!(f, "partial-spread"),
            Claim::Spread => write!(f, "spread"),
            Claim::Maximal => write!(f, "maximal"),
            Claim::Mrd => write!(f, "mrd"),
            Claim::Linear => write!(f, "linear"),
        }
    }
}

/// Result of checking one claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Claim holds.
    Pass,
    /// Claim is false; the string names a witness.
    Fail(String),
    /// Claim could not be checked (cap exceeded, or the claim does not
    /// apply to this kind of file).
    Unchecked(String),
}

/// One claim with its outcome.
#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub claim: Claim,
    pub outcome: Outcome,
}

impl ClaimReport {
    /// True only for a clean pass.
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// A parsed code file of either kind.
#[derive(Clone, Debug)]
pub enum CodeFile {
    Subspace(SubspaceCode),
    Rank(RankMetricCode),
}

/// Parses a code file, detecting the kind from the header: a rank-code
/// header carries five fields ending in `linear:{0,1}`, a subspace-code
/// header carries four.
pub fn parse_any_code(text: &str) -> Result<CodeFile> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    if header.split_whitespace().count() == 5 {
        Ok(CodeFile::Rank(RankMetricCode::parse_text(text)?))
    } else {
        Ok(CodeFile::Subspace(SubspaceCode::parse_text(text)?))
    }
}

/// Runs each claim against the code, never aborting on a failed or
/// uncheckable claim; `cap` bounds every brute-force scan.
pub fn run_claims(file: &CodeFile, claims: &[Claim], cap: u64) -> Vec<ClaimReport> {
    claims
        .iter()
        .map(|&claim| ClaimReport {
            claim,
            outcome: match file {
                CodeFile::Subspace(code) => check_subspace_claim(code, claim, cap),
                CodeFile::Rank(code) => check_rank_claim(code, claim, cap),
            },
        })
        .collect()
}

fn capped(err: Error) -> Outcome {
    Outcome::Unchecked(err.to_string())
}

fn render_word(w: &Subspace) -> String {
    w.basis().to_string().trim_end().replace('\n', "; ")
}

fn render_matrix(m: &Matrix) -> String {
    m.to_string().trim_end().replace('\n', "; ")
}

fn check_subspace_claim(code: &SubspaceCode, claim: Claim, cap: u64) -> Outcome {
    match claim {
        Claim::Size(n) => {
            if code.len() as u128 == n {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("file holds {} codewords", code.len()))
            }
        }
        Claim::ConstantDim(k) => match code.constant_dimension() {
            Some(found) if found == k => Outcome::Pass,
            Some(found) => Outcome::Fail(format!("all codewords have dimension {found}")),
            None => {
                let (i, w) = code
                    .iter()
                    .enumerate()
                    .find(|(_, w)| w.dim() != k)
                    .expect("some word deviates");
                Outcome::Fail(format!("codeword {i} has dimension {}", w.dim()))
            }
        },
        Claim::Distance(d) => match code.min_distance_pair(cap) {
            Err(e) => capped(e),
            Ok((found, _, _)) if found == d => Outcome::Pass,
            Ok((found, i, j)) => Outcome::Fail(format!(
                "distance {found} between codewords {i} [{}] and {j} [{}]",
                render_word(&code.words()[i]),
                render_word(&code.words()[j]),
            )),
        },
        Claim::PartialSpread => match is_partial_spread(code) {
            Err(e) => capped(e),
            Ok(true) => Outcome::Pass,
            Ok(false) => match intersecting_pair(code, cap) {
                Some((i, j, dim)) => Outcome::Fail(format!(
                    "codewords {i} and {j} intersect in dimension {dim}"
                )),
                None => Outcome::Fail("some nonzero vector is covered twice".into()),
            },
        },
        Claim::Spread => match is_spread(code) {
            Err(e) => capped(e),
            Ok(true) => Outcome::Pass,
            Ok(false) => {
                if let Ok(false) = is_partial_spread(code) {
                    return check_subspace_claim(code, Claim::PartialSpread, cap);
                }
                match crate::spreads::uncovered_vectors(code) {
                    Ok(v) if !v.is_empty() => Outcome::Fail(format!(
                        "vector [{}] is uncovered",
                        v[0].iter()
                            .map(|e| e.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )),
                    _ => Outcome::Fail("some nonzero vector is uncovered".into()),
                }
            }
        },
        Claim::Maximal => match maximality_witness(code) {
            Err(e) => capped(e),
            Ok(None) => Outcome::Pass,
            Ok(Some(m)) => Outcome::Fail(format!(
                "the disjoint subspace [{}] extends the code",
                render_matrix(&m)
            )),
        },
        Claim::Mrd | Claim::Linear => {
            Outcome::Unchecked(format!("{claim} applies to rank-metric code files"))
        }
    }
}

fn check_rank_claim(code: &RankMetricCode, claim: Claim, cap: u64) -> Outcome {
    match claim {
        Claim::Size(n) => {
            if code.len() as u128 == n {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("file holds {} words", code.len()))
            }
        }
        Claim::ConstantDim(k) => {
            if code.k() == k {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("words have {} rows", code.k()))
            }
        }
        Claim::Distance(d) => match code.distance_capped(cap) {
            Err(e) => capped(e),
            Ok(found) if found == d => Outcome::Pass,
            Ok(found) => Outcome::Fail(format!("rank distance is {found}")),
        },
        Claim::Mrd => match code.is_mrd() {
            Err(e) => capped(e),
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::Fail(format!(
                "{} words do not meet the bound for rank distance {}",
                code.len(),
                code.distance_capped(cap)
                    .map(|d| d.to_string())
                    .unwrap_or_else(|_| "?".into()),
            )),
        },
        Claim::Linear => {
            if code.is_linear() {
                return Outcome::Pass;
            }
            // the file did not declare linearity; test the words directly
            match RankMetricCode::from_words(code.words().to_vec(), true) {
                Ok(_) => Outcome::Pass,
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }
        Claim::PartialSpread | Claim::Spread | Claim::Maximal => {
            Outcome::Unchecked(format!("{claim} applies to subspace code files"))
        }
    }
}

/// First pair of codewords with a nontrivial intersection, within `cap`
/// pairs.
fn intersecting_pair(code: &SubspaceCode, cap: u64) -> Option<(usize, usize, usize)> {
    let mut budget = cap;
    for i in 0..code.len() {
        for j in i + 1..code.len() {
            budget = budget.checked_sub(1)?;
            let dim = code.words()[i].intersection_dim(&code.words()[j]).ok()?;
            if dim != 0 {
                return Some((i, j, dim));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::rankcode::{gabidulin, lift};
    use crate::spreads::etzion_vardy;

    #[test]
    fn partial_spread_claims_all_pass() {
        let code = etzion_vardy(2, 3, 8).unwrap().into_code();
        let claims = [
            Claim::Size(33),
            Claim::ConstantDim(3),
            Claim::Distance(6),
            Claim::PartialSpread,
            Claim::Maximal,
        ];
        let reports = run_claims(&CodeFile::Subspace(code), &claims, 1 << 20);
        for r in &reports {
            assert!(r.passed(), "claim {} -> {:?}", r.claim, r.outcome);
        }
    }

    #[test]
    fn lifted_code_distance_claim_passes() {
        let field = FiniteField::new(2, 1, None).unwrap();
        let code = lift(&gabidulin(&field, 3, 4, 2).unwrap()).unwrap();
        let reports = run_claims(
            &CodeFile::Subspace(code),
            &[Claim::Distance(4), Claim::Size(256)],
            1 << 20,
        );
        assert!(reports.iter().all(ClaimReport::passed));
    }

    #[test]
    fn failures_carry_witnesses() {
        let code = etzion_vardy(2, 3, 8).unwrap().into_code();
        let reports = run_claims(
            &CodeFile::Subspace(code),
            &[Claim::Size(34), Claim::Distance(4), Claim::Spread],
            1 << 20,
        );
        let texts: Vec<&Outcome> = reports.iter().map(|r| &r.outcome).collect();
        assert!(matches!(texts[0], Outcome::Fail(w) if w.contains("33")));
        assert!(matches!(texts[1], Outcome::Fail(w) if w.contains("distance 6")));
        assert!(matches!(texts[2], Outcome::Fail(w) if w.contains("uncovered")));
    }

    #[test]
    fn non_maximal_code_yields_a_disjoint_witness() {
        let mut code = etzion_vardy(2, 3, 8).unwrap().into_code();
        // drop the last word: the removed subspace must be rediscoverable
        let mut words = code.words().to_vec();
        words.pop();
        code = SubspaceCode::from_subspaces(code.field(), 8, words).unwrap();
        let reports = run_claims(&CodeFile::Subspace(code), &[Claim::Maximal], 1 << 20);
        assert!(matches!(&reports[0].outcome, Outcome::Fail(w) if w.contains("disjoint")));
    }

    #[test]
    fn duplicate_codewords_are_rejected_at_parse_time_with_indices() {
        let text = "2 4 2 2\ndim 2\n1 0 0 0\n0 1 0 0\ndim 2\n1 0 0 0\n0 1 0 0\n";
        match SubspaceCode::parse_text(text) {
            Err(Error::DuplicateCodeword { first, second }) => {
                assert_eq!((first, second), (0, 1));
            }
            other => panic!("expected a duplicate-codeword error, got {other:?}"),
        }
    }

    #[test]
    fn rank_file_claims() {
        let field = FiniteField::new(2, 1, None).unwrap();
        let code = gabidulin(&field, 2, 3, 2).unwrap();
        let text = code.to_text();
        let parsed = parse_any_code(&text).unwrap();
        assert!(matches!(parsed, CodeFile::Rank(_)));
        let reports = run_claims(
            &parsed,
            &[
                Claim::Size(8),
                Claim::ConstantDim(2),
                Claim::Distance(2),
                Claim::Mrd,
                Claim::Linear,
            ],
            1 << 20,
        );
        for r in &reports {
            assert!(r.passed(), "claim {} -> {:?}", r.claim, r.outcome);
        }
        // spread-style claims do not apply to rank files
        let reports = run_claims(&parsed, &[Claim::Spread], 1 << 20);
        assert!(matches!(&reports[0].outcome, Outcome::Unchecked(_)));
    }

    #[test]
    fn kind_detection_reads_past_comments() {
        let code = etzion_vardy(2, 3, 6).unwrap().into_code();
        let text = format!("# a comment\n{}", code.to_text());
        assert!(matches!(
            parse_any_code(&text).unwrap(),
            CodeFile::Subspace(_)
        ));
    }

    #[test]
    fn claim_parsing_roundtrip() {
        for s in [
            "size=33",
            "dim=3",
            "distance=6",
            "partial-spread",
            "spread",
            "maximal",
            "mrd",
            "linear",
        ] {
            assert_eq!(Claim::parse(s).unwrap().to_string(), s);
        }
        assert!(Claim::parse("size=x").is_err());
        assert!(Claim::parse("unknown").is_err());
    }
}
