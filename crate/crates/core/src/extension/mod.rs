//! Bottom-up construction of uniquely-Wilf classes.
//!
//! Given a finite class `F` with horizon `n` that is balanced at every pair
//! of sizes, a *potential extension* is a subset `X` of the next level of the
//! upward closure such that `F ∪ X` is `(k, n+1)`-balanced for every `k <= n`.
//! [`potential_extensions`] finds all of them with the propagating solver in
//! [`solver`]; [`search`] repeats the step depth first.

mod search;
mod solver;

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::class::FiniteClass;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::symmetry::{canonical_orbit_representative, orbit_size, Symmetry};
use crate::wilf::WilfMetrics;
use solver::Model;

pub use search::{
    resume, search, FrontierEntry, LevelLog, NodeStatus, SearchNode, SearchResolution,
    SearchStatus,
};

/// How the balance conditions are handed to the solver. All forms have the
/// same solutions; they differ in how early propagation bites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintForm {
    /// `sum_{sigma <= pi} x_pi - sum_{tau <= pi} x_pi = 0` for every pair.
    Difference,
    /// As `Difference`, summing only over `pi` involving exactly one of the pair.
    RestrictedDifference,
    /// `sum_{sigma <= pi} x_pi = t_k` for every `sigma` of size `k`, with the
    /// level target `t_k` pinned or left free.
    #[default]
    Target,
}

impl FromStr for ConstraintForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "difference" => Ok(ConstraintForm::Difference),
            "restricted" | "restricted-difference" => Ok(ConstraintForm::RestrictedDifference),
            "target" => Ok(ConstraintForm::Target),
            _ => Err(Error::Parse(format!("unknown constraint form {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOptions {
    /// Keep only extensions holding both monotone permutations of the new size.
    pub require_monotone: bool,
    /// Pinned level targets `k -> t_k`; used only by the target form.
    pub targets: BTreeMap<usize, usize>,
    pub constraint_form: ConstraintForm,
    /// Solve only the top-level `(n, n+1)` constraints, then discard solutions
    /// that are unbalanced at smaller sizes.
    pub filter_lower_levels: bool,
    /// Report one representative per orbit of the stabiliser of `F`.
    pub symmetry_reduction: bool,
    /// Largest class size the search will build.
    pub max_size: usize,
    /// Maximum number of search nodes to expand.
    pub branch_cap: usize,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            require_monotone: true,
            targets: BTreeMap::new(),
            constraint_form: ConstraintForm::Target,
            filter_lower_levels: false,
            symmetry_reduction: true,
            max_size: 8,
            branch_cap: 100_000,
            threads: 1,
        }
    }
}

/// An indicator over the candidate permutations of the next level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionVector {
    candidates: Arc<Vec<Perm>>,
    bits: Vec<bool>,
}

impl ExtensionVector {
    pub fn new(candidates: Arc<Vec<Perm>>, bits: Vec<bool>) -> Result<Self> {
        if candidates.len() != bits.len() {
            return Err(Error::Domain(format!(
                "{} bits for {} candidates",
                bits.len(),
                candidates.len()
            )));
        }
        Ok(ExtensionVector { candidates, bits })
    }

    /// The vector selecting exactly `members`, which must all be candidates.
    pub fn from_members(candidates: Arc<Vec<Perm>>, members: &[Perm]) -> Result<Self> {
        let mut bits = vec![false; candidates.len()];
        for m in members {
            let i = candidates
                .binary_search(m)
                .map_err(|_| Error::Domain(format!("{m} is not a candidate")))?;
            bits[i] = true;
        }
        Ok(ExtensionVector { candidates, bits })
    }

    pub fn candidates(&self) -> &[Perm] {
        &self.candidates
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn members(&self) -> Vec<Perm> {
        self.candidates
            .iter()
            .zip(&self.bits)
            .filter(|(_, &b)| b)
            .map(|(p, _)| *p)
            .collect()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }
}

impl Serialize for ExtensionVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PotentialExtension {
    pub members: ExtensionVector,
    /// Size of the orbit under the stabiliser (1 without symmetry reduction).
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionSet {
    /// Horizon of the class being extended; extensions have size `horizon + 1`.
    pub horizon: usize,
    pub candidates: Arc<Vec<Perm>>,
    pub stabilizer: Vec<Symmetry>,
    /// Number of potential extensions, counting every orbit member.
    pub total: usize,
    /// Ordered by decreasing size, ties broken by member list.
    pub extensions: Vec<PotentialExtension>,
}

/// Symmetries mapping every level of `class` onto itself.
pub fn stabilizer(class: &FiniteClass) -> Vec<Symmetry> {
    Symmetry::ALL
        .into_iter()
        .filter(|g| {
            (1..=class.max_size()).all(|k| {
                let level = class.level(k);
                g.apply_set(level).as_slice() == level
            })
        })
        .collect()
}

/// All potential extensions of `class` to size `class.max_size() + 1`.
///
/// Fails with a precondition error unless `class` is uniquely-Wilf through
/// its own horizon.
pub fn potential_extensions(class: &FiniteClass, opts: &SearchOptions) -> Result<ExtensionSet> {
    if class.max_size() == 0 {
        return Err(Error::Precondition("class has horizon 0".into()));
    }
    if !WilfMetrics::new(class).is_uniquely_wilf(class.max_size())? {
        return Err(Error::Precondition(format!(
            "class is not uniquely-Wilf through size {}",
            class.max_size()
        )));
    }
    potential_extensions_unchecked(class, opts)
}

pub(crate) fn potential_extensions_unchecked(
    class: &FiniteClass,
    opts: &SearchOptions,
) -> Result<ExtensionSet> {
    let n = class.max_size();
    let candidates = Arc::new(class.next_level_candidates());
    validate_targets(n, candidates.len(), opts)?;
    let incidence = Incidence::new(class, &candidates);

    // Solver variable order: candidates covering the most size-n members first.
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(incidence.patterns[c][n].len()));
    let mut var_of = vec![0; candidates.len()];
    for (var, &c) in order.iter().enumerate() {
        var_of[c] = var;
    }

    let levels: Vec<usize> = if opts.filter_lower_levels {
        vec![n]
    } else {
        (2..=n).collect()
    };
    let mut model = Model::new(candidates.len());
    for &k in &levels {
        add_level_constraints(&mut model, class, &incidence, k, &var_of, opts);
    }

    if opts.require_monotone {
        for mono in [Perm::identity(n + 1), Perm::decreasing(n + 1)] {
            match candidates.binary_search(&mono) {
                Ok(c) => model.fix(var_of[c], true),
                Err(_) => return Ok(empty_set(class, candidates)),
            }
        }
    }

    let mut solutions: Vec<Vec<bool>> = model
        .solve_all()
        .into_iter()
        .map(|x| (0..candidates.len()).map(|c| x[var_of[c]]).collect())
        .collect();
    if opts.filter_lower_levels {
        solutions.retain(|bits| incidence.balanced(class, bits));
    }

    let group = if opts.symmetry_reduction {
        stabilizer(class)
    } else {
        vec![Symmetry::IDENTITY]
    };
    let total = solutions.len();
    let mut extensions: Vec<PotentialExtension> = Vec::new();
    for bits in solutions {
        let members = ExtensionVector::new(candidates.clone(), bits)?;
        let set = members.members();
        if canonical_orbit_representative(&set, &group) != set {
            continue;
        }
        extensions.push(PotentialExtension {
            orbit_size: orbit_size(&set, &group),
            members,
        });
    }
    extensions.sort_by(|a, b| {
        b.members
            .count()
            .cmp(&a.members.count())
            .then_with(|| a.members.members().cmp(&b.members.members()))
    });
    Ok(ExtensionSet {
        horizon: n,
        candidates,
        stabilizer: group,
        total,
        extensions,
    })
}

fn empty_set(class: &FiniteClass, candidates: Arc<Vec<Perm>>) -> ExtensionSet {
    ExtensionSet {
        horizon: class.max_size(),
        candidates,
        stabilizer: vec![Symmetry::IDENTITY],
        total: 0,
        extensions: Vec::new(),
    }
}

fn validate_targets(n: usize, num_candidates: usize, opts: &SearchOptions) -> Result<()> {
    for (&k, &t) in &opts.targets {
        if !(2..=n).contains(&k) {
            return Err(Error::Domain(format!("target for size {k} outside 2..={n}")));
        }
        if t > num_candidates {
            return Err(Error::Domain(format!(
                "target t_{k} = {t} exceeds the {num_candidates} candidates"
            )));
        }
    }
    Ok(())
}

/// For each candidate, its patterns at every size, as indices into the levels
/// of the class.
struct Incidence {
    // patterns[c][k] = sorted indices into class.level(k)
    patterns: Vec<Vec<Vec<usize>>>,
}

impl Incidence {
    fn new(class: &FiniteClass, candidates: &[Perm]) -> Self {
        let n = class.max_size();
        let patterns = candidates
            .iter()
            .map(|c| {
                let by_size = c.patterns_down_to(1);
                (0..=n)
                    .map(|k| {
                        by_size[k]
                            .iter()
                            .map(|p| {
                                class
                                    .level(k)
                                    .binary_search(p)
                                    .expect("candidates lie in the upward closure")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Incidence { patterns }
    }

    // involvers[k][i] = candidates holding class.level(k)[i]
    fn involvers(&self, class: &FiniteClass, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); class.level(k).len()];
        for (c, pats) in self.patterns.iter().enumerate() {
            for &i in &pats[k] {
                out[i].push(c);
            }
        }
        out
    }

    fn balanced(&self, class: &FiniteClass, bits: &[bool]) -> bool {
        (1..=class.max_size()).all(|k| {
            let mut counts = vec![0usize; class.level(k).len()];
            for (c, pats) in self.patterns.iter().enumerate() {
                if bits[c] {
                    for &i in &pats[k] {
                        counts[i] += 1;
                    }
                }
            }
            counts.windows(2).all(|w| w[0] == w[1])
        })
    }
}

fn add_level_constraints(
    model: &mut Model,
    class: &FiniteClass,
    incidence: &Incidence,
    k: usize,
    var_of: &[usize],
    opts: &SearchOptions,
) {
    let involvers = incidence.involvers(class, k);
    let terms = |cands: &[usize], coef: i8| -> Vec<(usize, i8)> {
        cands.iter().map(|&c| (var_of[c], coef)).collect()
    };
    match opts.constraint_form {
        ConstraintForm::Target => {
            let exprs = involvers.iter().map(|inv| model.add_expr(terms(inv, 1))).collect();
            let (lo, hi) = match opts.targets.get(&k) {
                Some(&t) => (t as i32, t as i32),
                None => (0, var_of.len() as i32),
            };
            model.add_group(exprs, lo, hi);
        }
        ConstraintForm::Difference | ConstraintForm::RestrictedDifference => {
            let restricted = opts.constraint_form == ConstraintForm::RestrictedDifference;
            for i in 0..involvers.len() {
                for j in i + 1..involvers.len() {
                    let (a, b) = (&involvers[i], &involvers[j]);
                    let mut t = Vec::new();
                    if restricted {
                        let sa: BTreeSet<usize> = a.iter().copied().collect();
                        let sb: BTreeSet<usize> = b.iter().copied().collect();
                        t.extend(sa.difference(&sb).map(|&c| (var_of[c], 1)));
                        t.extend(sb.difference(&sa).map(|&c| (var_of[c], -1)));
                    } else {
                        t.extend(terms(a, 1));
                        t.extend(terms(b, -1));
                    }
                    let e = model.add_expr(t);
                    model.add_group(vec![e], 0, 0);
                }
            }
        }
    }
}

/// The class `class ∪ X` with horizon one larger.
pub fn extend(class: &FiniteClass, x: &ExtensionVector) -> Result<FiniteClass> {
    let expected = class.next_level_candidates();
    if x.candidates() != expected.as_slice() {
        return Err(Error::Stale(format!(
            "extension built for {} candidates does not match the {} candidates of this class",
            x.candidates().len(),
            expected.len()
        )));
    }
    Ok(class.push_level_unchecked(x.members()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::enumerate_av;
    use crate::perm::parse_perm_list;
    use crate::wilf::is_uniquely_wilf;

    fn perms(s: &str) -> Vec<Perm> {
        parse_perm_list(s).unwrap()
    }

    /// `S_{<=2}` together with the given size-3 level.
    fn with_level3(level3: &str) -> FiniteClass {
        FiniteClass::all_permutations(2).push_level_unchecked(perms(level3))
    }

    fn opts(require_monotone: bool, symmetry_reduction: bool) -> SearchOptions {
        SearchOptions {
            require_monotone,
            symmetry_reduction,
            ..Default::default()
        }
    }

    fn member_sets(set: &ExtensionSet) -> BTreeSet<Vec<Perm>> {
        set.extensions.iter().map(|e| e.members.members()).collect()
    }

    // Oracle: every subset of the candidates, balance checked by containment.
    fn brute_force(class: &FiniteClass, require_monotone: bool) -> BTreeSet<Vec<Perm>> {
        let cands = class.next_level_candidates();
        assert!(cands.len() <= 20);
        let n = class.max_size();
        let mut out = BTreeSet::new();
        for mask in 0u32..1 << cands.len() {
            let x: Vec<Perm> = (0..cands.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cands[i])
                .collect();
            if require_monotone
                && !(x.contains(&Perm::identity(n + 1)) && x.contains(&Perm::decreasing(n + 1)))
            {
                continue;
            }
            let ok = (1..=n).all(|k| {
                let counts: BTreeSet<usize> = class
                    .level(k)
                    .iter()
                    .map(|s| x.iter().filter(|p| p.contains(s)).count())
                    .collect();
                counts.len() <= 1
            });
            if ok {
                out.insert(x);
            }
        }
        out
    }

    #[test]
    fn sixteen_base_extensions() {
        let s2 = FiniteClass::all_permutations(2);
        let set = potential_extensions(&s2, &opts(true, false)).unwrap();
        assert_eq!(set.total, 16);
        let nonmono = perms("132,213,231,312");
        let mut expected = BTreeSet::new();
        for mask in 0..16 {
            let mut x = perms("123,321");
            x.extend((0..4).filter(|i| mask >> i & 1 == 1).map(|i| nonmono[i]));
            x.sort();
            expected.insert(x);
        }
        assert_eq!(member_sets(&set), expected);
        assert!(set.extensions[0].members.is_full());
    }

    #[test]
    fn empty_vector_always_present_without_monotone_requirement() {
        for f in [
            FiniteClass::all_permutations(2),
            with_level3("123,132,321"),
            with_level3("123,321"),
        ] {
            let set = potential_extensions(&f, &opts(false, false)).unwrap();
            assert!(set.extensions.iter().any(|e| e.members.count() == 0));
        }
    }

    #[test]
    fn monotone_only_level() {
        let f = with_level3("123,321");
        let set = potential_extensions(&f, &opts(true, false)).unwrap();
        assert_eq!(set.total, 1);
        assert_eq!(set.extensions[0].members.members(), perms("1234,4321"));
        assert!(set.extensions[0].members.is_full());
    }

    #[test]
    fn forms_agree_with_brute_force() {
        let classes = [
            FiniteClass::all_permutations(2),
            with_level3("123,321"),
            with_level3("123,132,321"),
            with_level3("123,132,231,321"),
            with_level3("123,132,213,321"),
            with_level3("123,132,312,321"),
            with_level3("123,132,213,231,321"),
            enumerate_av(&perms("213,231,312"), 5).unwrap(),
            enumerate_av(&perms("213,312"), 4).unwrap(),
        ];
        for f in &classes {
            for require_monotone in [true, false] {
                let oracle = brute_force(f, require_monotone);
                for form in [
                    ConstraintForm::Difference,
                    ConstraintForm::RestrictedDifference,
                    ConstraintForm::Target,
                ] {
                    for filter_lower_levels in [false, true] {
                        let o = SearchOptions {
                            constraint_form: form,
                            filter_lower_levels,
                            ..opts(require_monotone, false)
                        };
                        let got = potential_extensions(f, &o).unwrap();
                        assert_eq!(member_sets(&got), oracle, "{form:?} on {:?}", f.level_counts());
                        assert_eq!(got.total, oracle.len());
                    }
                }
            }
        }
    }

    #[test]
    fn every_extension_is_uniquely_wilf() {
        let f = with_level3("123,132,231,321");
        let set = potential_extensions(&f, &opts(false, false)).unwrap();
        for e in &set.extensions {
            let g = extend(&f, &e.members).unwrap();
            assert!(is_uniquely_wilf(&g, 4).unwrap());
        }
    }

    #[test]
    fn orbit_sizes_sum_to_total() {
        for f in [FiniteClass::all_permutations(2), FiniteClass::all_permutations(3)] {
            for require_monotone in [true, false] {
                if f.max_size() == 3 && !require_monotone {
                    continue;
                }
                let full = potential_extensions(&f, &opts(require_monotone, false)).unwrap();
                let reduced = potential_extensions(&f, &opts(require_monotone, true)).unwrap();
                let sum: usize = reduced.extensions.iter().map(|e| e.orbit_size).sum();
                assert_eq!(sum, full.total);
                assert_eq!(reduced.total, full.total);
                assert!(reduced.extensions.len() < full.extensions.len());
            }
        }
    }

    #[test]
    fn pinned_targets() {
        let s2 = FiniteClass::all_permutations(2);
        // Each of 12, 21 lies in exactly t_2 members.
        let o = SearchOptions {
            targets: [(2, 3)].into(),
            ..opts(true, false)
        };
        let set = potential_extensions(&s2, &o).unwrap();
        // Both monotones plus two of the four others.
        assert_eq!(set.total, 6);
        let bad = SearchOptions {
            targets: [(2, 9)].into(),
            ..opts(true, false)
        };
        assert!(potential_extensions(&s2, &bad).is_err());
    }

    #[test]
    fn precondition_rejects_unbalanced_class() {
        let f = enumerate_av(&perms("132"), 4).unwrap();
        assert!(matches!(
            potential_extensions(&f, &opts(true, false)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn extend_examples() {
        let s2 = FiniteClass::all_permutations(2);
        let cands = Arc::new(s2.next_level_candidates());
        let empty = ExtensionVector::new(cands.clone(), vec![false; 6]).unwrap();
        let g = extend(&s2, &empty).unwrap();
        assert_eq!(g.max_size(), 3);
        assert!(g.level(3).is_empty());
        let full = ExtensionVector::new(cands, vec![true; 6]).unwrap();
        assert_eq!(extend(&s2, &full).unwrap(), FiniteClass::all_permutations(3));

        let f = with_level3("123,132,321");
        let cands = Arc::new(f.next_level_candidates());
        let full = ExtensionVector::new(cands.clone(), vec![true; cands.len()]).unwrap();
        let g = extend(&f, &full).unwrap();
        assert_eq!(g.level(4), perms("1234,1243,1432,4321").as_slice());
        assert_eq!(g, enumerate_av(&perms("213,231,312"), 4).unwrap());

        // A vector for another class is stale.
        assert!(matches!(extend(&s2, &full), Err(Error::Stale(_))));
    }

    #[test]
    fn stabilizers() {
        assert_eq!(stabilizer(&FiniteClass::all_permutations(2)).len(), 8);
        let a = stabilizer(&with_level3("123,132,321"));
        assert_eq!(a.len(), 2);
        assert!(a.iter().all(|g| g.apply(&perms("132")[0]) == perms("132")[0]));
        let b = stabilizer(&with_level3("123,132,231,321"));
        assert_eq!(b.len(), 2);
        assert!(b.contains(&Symmetry::REVERSE));
    }

    #[test]
    fn degenerate_empty_top_level() {
        let f = with_level3("123,321").with_max_size(4);
        let set = potential_extensions(&f, &opts(false, false)).unwrap();
        assert!(set.candidates.is_empty());
        assert_eq!(set.total, 1);
        let set = potential_extensions(&f, &opts(true, false)).unwrap();
        assert_eq!(set.total, 0);
    }
}
