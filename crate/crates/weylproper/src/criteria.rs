//! Decision procedures with machine-checkable certificates.
//!
//! All four procedures decide questions about the Weyl-group saturation
//! `W.a_h` of a split subalgebra `a_h` of the Cartan subspace, given by
//! rational normal vectors:
//!
//! * [`weyl_membership`] — is a point in `W.a_h`?
//! * [`benoist_check`] — does the reverse-negation-fixed cone escape
//!   `W.a_h` (the existence criterion for non-virtually-abelian
//!   discontinuous groups)?
//! * [`sl2_obstruction`] — which hyperbolic elements of sl(2,R)-homomorphisms
//!   lie in `W.a_h` (no proper SL(2,R)-action exists iff all of them do)?
//! * [`kobayashi_pair_check`] — does a reductive pair act properly, i.e. is
//!   every Weyl image of `a_l` transverse to `a_h`?
//!
//! Every verdict carries a certificate that replays deterministically:
//! recomputing the decision from the recorded inputs reproduces the
//! certificate bit for bit. Enumeration never runs over all `n!` Weyl
//! elements blindly; it visits one representative per distinct simultaneous
//! image of the normal tuple, which is what the recorded `images_checked`
//! counts.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{same_basis, ExactScalar, IrrationalBasis, Rational};
use crate::linalg;
use crate::root_data::CartanPoint;
use crate::root_data::WeylElement;
use crate::sl2_orbits::{hyperbolic_set, HyperbolicElement};

/// A split subalgebra of the Cartan subspace, presented as the common
/// kernel of rational normal vectors.
///
/// Normals are canonicalized at construction: projected into the traceless
/// hyperplane, scaled to coprime integers, and sign-normalized so the first
/// nonzero entry is positive. The empty normal list is rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSubalgebra {
    n: usize,
    basis: Arc<IrrationalBasis>,
    normals: Vec<CartanPoint>,
    normal_rows: Vec<Vec<Rational>>,
    dim: usize,
}

/// Scale a rational vector to coprime integers with positive leading entry.
/// Returns `None` for the zero vector.
fn primitive_integer_form(row: &[Rational]) -> Option<Vec<Rational>> {
    if row.iter().all(Rational::is_zero) {
        return None;
    }
    let denom_lcm = row
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<num_bigint::BigInt> = row
        .iter()
        .map(|q| q.numer() * (&denom_lcm / q.denom()))
        .collect();
    let gcd = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, v| acc.gcd(v));
    let mut ints: Vec<num_bigint::BigInt> = ints.into_iter().map(|v| v / &gcd).collect();
    if ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(Signed::is_negative)
    {
        for v in &mut ints {
            *v = -v.clone();
        }
    }
    Some(ints.into_iter().map(Rational::from_integer).collect())
}

impl SplitSubalgebra {
    /// Build from raw rational normal vectors of length `n`. Vectors are
    /// projected into the traceless hyperplane first; a vector that projects
    /// to zero, a duplicate normal (up to scaling), or an empty list is
    /// rejected.
    pub fn new(basis: &Arc<IrrationalBasis>, n: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSubalgebra(format!(
                "rank must be at least 2, got {n}"
            )));
        }
        if rows.is_empty() {
            return Err(Error::InvalidSubalgebra(
                "empty normal list (model a full Cartan subspace explicitly, not by omission)"
                    .into(),
            ));
        }
        let n_big = Rational::from_integer(num_bigint::BigInt::from(n as i64));
        let mut normal_rows: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            let mean = row.iter().sum::<Rational>() / &n_big;
            let projected: Vec<Rational> = row.iter().map(|q| q - &mean).collect();
            let canonical = primitive_integer_form(&projected).ok_or_else(|| {
                Error::InvalidSubalgebra("a normal projects to zero in the Cartan subspace".into())
            })?;
            if normal_rows.contains(&canonical) {
                return Err(Error::InvalidSubalgebra(
                    "normals must be pairwise linearly independent".into(),
                ));
            }
            normal_rows.push(canonical);
        }
        let rank = linalg::rank(normal_rows.clone());
        let dim = (n - 1) - rank;
        let normals = normal_rows
            .iter()
            .map(|r| CartanPoint::from_rationals(basis, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(SplitSubalgebra {
            n,
            basis: Arc::clone(basis),
            normals,
            normal_rows,
            dim,
        })
    }

    /// Build from already-traceless rational points.
    pub fn from_points(points: &[CartanPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSubalgebra(
                "empty normal list (model a full Cartan subspace explicitly, not by omission)"
                    .into(),
            ));
        }
        let rows = points
            .iter()
            .map(|p| {
                p.as_rationals().ok_or_else(|| {
                    Error::InvalidSubalgebra("normals must have rational entries".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points[0].basis(), points[0].n(), &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the subalgebra: `(n - 1) - rank(normals)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    /// The canonicalized normals.
    pub fn normals(&self) -> &[CartanPoint] {
        &self.normals
    }

    pub(crate) fn normal_rows(&self) -> &[Vec<Rational>] {
        &self.normal_rows
    }
}

/// Assign each coordinate a small class id so that two coordinates get the
/// same id iff every row agrees on them. Distinct simultaneous images of the
/// row tuple correspond exactly to distinct arrangements of these ids.
fn column_classes(rows: &[Vec<Rational>], n: usize) -> Vec<u8> {
    let mut ids: HashMap<Vec<&Rational>, u8> = HashMap::new();
    let mut classes = Vec::with_capacity(n);
    for i in 0..n {
        let column: Vec<&Rational> = rows.iter().map(|r| &r[i]).collect();
        let next = ids.len() as u8;
        classes.push(*ids.entry(column).or_insert(next));
    }
    classes
}

/// Visit one Weyl element per distinct simultaneous image of the normal
/// tuple, in lexicographic order of the elements (so each visited element is
/// the least one producing its image, and the first qualifying element is
/// the least qualifying one overall). Stops early when `test` returns true.
/// Returns the number of distinct images visited and the qualifying element.
fn scan_distinct_images<F>(
    n: usize,
    classes: &[u8],
    mut test: F,
) -> Result<(usize, Option<WeylElement>)>
where
    F: FnMut(&WeylElement) -> Result<bool>,
{
    let mut seen: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    let mut checked = 0usize;
    for w in WeylElement::all(n) {
        let key: Vec<u8> = (0..n).map(|i| classes[w.apply(i)]).collect();
        if !seen.insert(key) {
            continue;
        }
        checked += 1;
        if test(&w)? {
            return Ok((checked, Some(w)));
        }
    }
    Ok((checked, None))
}

/// The distinct simultaneous images of the normal tuple under the Weyl
/// group, each produced once.
pub fn distinct_images(h: &SplitSubalgebra) -> Result<Vec<Vec<CartanPoint>>> {
    let classes = column_classes(h.normal_rows(), h.n());
    let mut out = Vec::new();
    scan_distinct_images(h.n(), &classes, |w| {
        let inv = w.inverse();
        let tuple = h
            .normals()
            .iter()
            .map(|v| inv.act(v))
            .collect::<Result<Vec<_>>>()?;
        out.push(tuple);
        Ok(false)
    })?;
    Ok(out)
}

/// Verdict of a [`weyl_membership`] test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member,
    NonMember,
}

impl fmt::Display for MembershipVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MembershipVerdict::Member => "member",
            MembershipVerdict::NonMember => "non_member",
        })
    }
}

/// One refuted image in a non-membership certificate: for the image of the
/// normal tuple under `weyl^-1`, normal `normal_index` has the recorded
/// nonzero inner product with the tested point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub weyl: WeylElement,
    pub normal_index: usize,
    pub value: ExactScalar,
}

/// A replayable proof that a point is, or is not, in `W.a_h`.
///
/// For a member, `weyl` maps the point into the subalgebra:
/// `<act(weyl, point), v_j> = 0` for every normal `v_j`, with the zero
/// values recorded. `weyl` is the lexicographically least Weyl element with
/// this property. For a non-member, every distinct image of the normal tuple
/// is refuted by an explicit nonzero product; `images_checked` counts them
/// exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub point: CartanPoint,
    pub normals: Vec<CartanPoint>,
    pub verdict: MembershipVerdict,
    pub weyl: Option<WeylElement>,
    pub zero_products: Vec<ExactScalar>,
    pub refutations: Vec<Refutation>,
    pub images_checked: usize,
}

impl MembershipCertificate {
    /// Recompute the decision from the recorded inputs and compare. The
    /// decision procedure is deterministic, so a valid certificate
    /// reproduces itself exactly.
    pub fn verify(&self) -> Result<bool> {
        let h = SplitSubalgebra::from_points(&self.normals)?;
        Ok(weyl_membership(&self.point, &h)? == *self)
    }
}

/// Decide whether `x` lies in the union of the Weyl images of the
/// subalgebra, i.e. whether some Weyl element maps `x` into it.
///
/// Zero testing is coefficient-based, so irrational entries in `x` are fine
/// and no sign refinement is ever needed.
pub fn weyl_membership(x: &CartanPoint, h: &SplitSubalgebra) -> Result<MembershipCertificate> {
    if x.n() != h.n() {
        return Err(Error::RankMismatch {
            expected: h.n(),
            actual: x.n(),
        });
    }
    if !same_basis(x.basis(), h.basis()) {
        return Err(Error::BasisMismatch);
    }
    let n = h.n();
    let classes = column_classes(h.normal_rows(), n);
    let mut refutations: Vec<Refutation> = Vec::new();
    let mut member_products: Vec<ExactScalar> = Vec::new();

    let (images_checked, qualifying) = scan_distinct_images(n, &classes, |w| {
        // products <x, w^-1 . v_j> = <act(w, x), v_j>, coordinate i of
        // w^-1 . v_j being v_j[w(i)]
        let mut products = Vec::with_capacity(h.normal_rows().len());
        for (j, row) in h.normal_rows().iter().enumerate() {
            let mut acc = ExactScalar::zero(x.basis());
            for (i, entry) in x.entries().iter().enumerate() {
                acc = acc.add(&entry.scale(&row[w.apply(i)]))?;
            }
            if !acc.is_zero() {
                refutations.push(Refutation {
                    weyl: w.clone(),
                    normal_index: j,
                    value: acc,
                });
                return Ok(false);
            }
            products.push(acc);
        }
        member_products = products;
        Ok(true)
    })?;

    match qualifying {
        Some(w) => Ok(MembershipCertificate {
            point: x.clone(),
            normals: h.normals().to_vec(),
            verdict: MembershipVerdict::Member,
            weyl: Some(w),
            zero_products: member_products,
            refutations: Vec::new(),
            images_checked,
        }),
        None => Ok(MembershipCertificate {
            point: x.clone(),
            normals: h.normals().to_vec(),
            verdict: MembershipVerdict::NonMember,
            weyl: None,
            zero_products: Vec::new(),
            refutations,
            images_checked,
        }),
    }
}

/// Verdict of a [`benoist_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenoistVerdict {
    /// The reverse-negation-fixed cone escapes `W.a_h`: a non-virtually-
    /// abelian discontinuous group exists.
    Holds,
    /// The cone is contained in `W.a_h`.
    Fails,
}

impl fmt::Display for BenoistVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenoistVerdict::Holds => "holds",
            BenoistVerdict::Fails => "fails",
        })
    }
}

/// How [`benoist_check`] constructs the witness point when the criterion
/// holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessStrategy {
    /// The generic symbolic point `sum_i t_i (e_i - e_(n+1-i))` with the
    /// basis symbols arranged decreasingly. Its membership test is exact
    /// coefficient arithmetic and is equivalent to the palindromic-image
    /// check for the whole cone.
    #[default]
    Symbolic,
    /// The smallest-height integer point of the open cone
    /// `b_1 > b_2 > ... > 0` that fails membership, searched in increasing
    /// height. Terminates whenever the criterion holds, because finitely
    /// many proper subspaces cannot cover the integer points of the cone.
    Rational,
}

impl fmt::Display for WitnessStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessStrategy::Symbolic => "symbolic",
            WitnessStrategy::Rational => "rational",
        })
    }
}

/// One recorded palindromy identity: coordinate `position` and its mirror
/// agree in the image of normal `normal_index` under `weyl^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalindromyEquation {
    pub normal_index: usize,
    /// 0-based coordinate `i < n-1-i`; the identity is
    /// `u[i] - u[n-1-i] = 0` for `u = act(weyl^-1, v_j)`.
    pub position: usize,
    pub value: ExactScalar,
}

/// A replayable proof that the reverse-negation-fixed cone does or does not
/// escape `W.a_h`.
///
/// When the criterion holds, the certificate carries a witness point of the
/// cone together with its exhaustive non-membership certificate. When it
/// fails, it carries a Weyl element `w` such that `act(w^-1, v_j)` is
/// palindromic for every normal, plus the palindromy identities; such a `w`
/// wipes out the whole span of the cone, which is the only way a finite
/// union of subspaces can contain a cone with nonempty relative interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenoistCertificate {
    pub normals: Vec<CartanPoint>,
    pub verdict: BenoistVerdict,
    pub strategy: WitnessStrategy,
    pub witness: Option<CartanPoint>,
    pub witness_membership: Option<MembershipCertificate>,
    pub weyl: Option<WeylElement>,
    pub palindromy: Vec<PalindromyEquation>,
    pub images_checked: usize,
}

impl BenoistCertificate {
    pub fn verify(&self) -> Result<bool> {
        let h = SplitSubalgebra::from_points(&self.normals)?;
        Ok(benoist_check_with(&h, self.strategy)? == *self)
    }
}

/// The generic symbolic point of the reverse-negation-fixed cone: the first
/// `floor(n/2)` basis symbols, arranged so the entries strictly decrease.
fn symbolic_probe(basis: &Arc<IrrationalBasis>, n: usize) -> Result<CartanPoint> {
    let k = n / 2;
    if basis.len() < k {
        return Err(Error::InvalidBasis(format!(
            "rank {n} needs {k} independent symbols, the basis has {}",
            basis.len()
        )));
    }
    let mut entries = vec![ExactScalar::zero(basis); n];
    for i in 0..k {
        // larger symbols first: sqrt-prime symbols increase with the index
        let sym = ExactScalar::symbol_at(basis, k - 1 - i)?;
        entries[n - 1 - i] = sym.neg();
        entries[i] = sym;
    }
    CartanPoint::new(entries)
}

/// Decide the criterion with the default (symbolic) witness strategy.
pub fn benoist_check(h: &SplitSubalgebra) -> Result<BenoistCertificate> {
    benoist_check_with(h, WitnessStrategy::Symbolic)
}

/// Decide whether the reverse-negation-fixed cone escapes `W.a_h`.
///
/// The cone has nonempty interior inside its span, and `W.a_h` is a finite
/// union of subspaces, so containment can only happen if a single Weyl image
/// of `a_h` contains the whole span — equivalently, if some simultaneous
/// image of the normals is palindromic. Membership of the generic symbolic
/// point decides exactly this, and its certificate doubles as the reduction
/// certificate in both directions.
pub fn benoist_check_with(
    h: &SplitSubalgebra,
    strategy: WitnessStrategy,
) -> Result<BenoistCertificate> {
    let probe = symbolic_probe(h.basis(), h.n())?;
    let probe_cert = weyl_membership(&probe, h)?;
    match probe_cert.verdict {
        MembershipVerdict::Member => {
            let w = probe_cert
                .weyl
                .clone()
                .expect("member certificate carries its Weyl element");
            let w_inv = w.inverse();
            let mut palindromy = Vec::new();
            for (j, v) in h.normals().iter().enumerate() {
                let u = w_inv.act(v)?;
                for i in 0..h.n() / 2 {
                    let value = u.entries()[i].sub(&u.entries()[h.n() - 1 - i])?;
                    debug_assert!(value.is_zero());
                    palindromy.push(PalindromyEquation {
                        normal_index: j,
                        position: i,
                        value,
                    });
                }
            }
            Ok(BenoistCertificate {
                normals: h.normals().to_vec(),
                verdict: BenoistVerdict::Fails,
                strategy,
                witness: None,
                witness_membership: None,
                weyl: Some(w),
                palindromy,
                images_checked: probe_cert.images_checked,
            })
        }
        MembershipVerdict::NonMember => {
            let (witness, witness_membership) = match strategy {
                WitnessStrategy::Symbolic => (probe, probe_cert.clone()),
                WitnessStrategy::Rational => {
                    let w = rational_witness(h)?;
                    let cert = weyl_membership(&w, h)?;
                    debug_assert_eq!(cert.verdict, MembershipVerdict::NonMember);
                    (w, cert)
                }
            };
            let images_checked = witness_membership.images_checked;
            Ok(BenoistCertificate {
                normals: h.normals().to_vec(),
                verdict: BenoistVerdict::Holds,
                strategy,
                witness: Some(witness),
                witness_membership: Some(witness_membership),
                weyl: None,
                palindromy: Vec::new(),
                images_checked,
            })
        }
    }
}

/// A witness point of the cone outside `W.a_h`. Errors with
/// [`Error::Precondition`] when the criterion fails for `h`.
pub fn benoist_witness(h: &SplitSubalgebra, strategy: WitnessStrategy) -> Result<CartanPoint> {
    let cert = benoist_check_with(h, strategy)?;
    match cert.verdict {
        BenoistVerdict::Holds => Ok(cert.witness.expect("holds certificate carries a witness")),
        BenoistVerdict::Fails => Err(Error::Precondition(
            "benoist_witness requires benoist_check to hold for the subalgebra".into(),
        )),
    }
}

/// Smallest-height integer point of the open cone failing membership,
/// enumerated by increasing leading entry and lexicographically within one
/// height.
fn rational_witness(h: &SplitSubalgebra) -> Result<CartanPoint> {
    let n = h.n();
    let k = n / 2;
    let mut height = k as i64;
    loop {
        let mut tail = Vec::with_capacity(k - 1);
        if let Some(found) = search_tails(h, height, &mut tail, k - 1)? {
            return Ok(found);
        }
        height += 1;
    }
}

fn search_tails(
    h: &SplitSubalgebra,
    head: i64,
    tail: &mut Vec<i64>,
    remaining: usize,
) -> Result<Option<CartanPoint>> {
    if remaining == 0 {
        let n = h.n();
        let mut entries = vec![0i64; n];
        entries[0] = head;
        for (i, &b) in tail.iter().enumerate() {
            entries[i + 1] = b;
        }
        for i in 0..n / 2 {
            entries[n - 1 - i] = -entries[i];
        }
        let point = CartanPoint::from_integers(h.basis(), &entries)?;
        let cert = weyl_membership(&point, h)?;
        return Ok((cert.verdict == MembershipVerdict::NonMember).then_some(point));
    }
    let prev = tail.last().copied().unwrap_or(head);
    for b in (remaining as i64)..prev {
        tail.push(b);
        let found = search_tails(h, head, tail, remaining - 1)?;
        tail.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// One row of an [`Sl2Report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Entry {
    pub element: HyperbolicElement,
    pub certificate: MembershipCertificate,
}

/// Membership certificates for every hyperbolic element of rank `n`, plus
/// the aggregated properness flag.
///
/// `proper_sl2_exists` is true iff some *nonzero* hyperbolic element is a
/// non-member; the zero element (partition `[1^n]`, precompact image) lies
/// in every `W.a_h` and is reported but excluded from the flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Report {
    pub normals: Vec<CartanPoint>,
    pub entries: Vec<Sl2Entry>,
    pub proper_sl2_exists: bool,
}

impl Sl2Report {
    pub fn verify(&self) -> Result<bool> {
        let h = SplitSubalgebra::from_points(&self.normals)?;
        Ok(sl2_obstruction(&h)? == *self)
    }
}

/// Run [`weyl_membership`] on the hyperbolic element of every partition of
/// `n` against `h`.
pub fn sl2_obstruction(h: &SplitSubalgebra) -> Result<Sl2Report> {
    let mut entries = Vec::new();
    let mut proper_sl2_exists = false;
    for element in hyperbolic_set(h.basis(), h.n())? {
        let certificate = weyl_membership(element.point(), h)?;
        if certificate.verdict == MembershipVerdict::NonMember && !element.point().is_zero() {
            proper_sl2_exists = true;
        }
        entries.push(Sl2Entry {
            element,
            certificate,
        });
    }
    Ok(Sl2Report {
        normals: h.normals().to_vec(),
        entries,
        proper_sl2_exists,
    })
}

/// Verdict of a [`kobayashi_pair_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairVerdict {
    /// Every Weyl image of `a_l` meets `a_h` trivially: the action is proper.
    Proper,
    /// Some Weyl image of `a_l` meets `a_h` in a line or more.
    NotProper,
    /// `a_l` is the zero subspace; properness is vacuous and no verdict on
    /// noncompact behavior is claimed.
    Degenerate,
}

impl fmt::Display for PairVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairVerdict::Proper => "proper",
            PairVerdict::NotProper => "not_proper",
            PairVerdict::Degenerate => "degenerate",
        })
    }
}

/// A replayable proof for the pair criterion.
///
/// For `NotProper`, `weyl` is the lexicographically least element with
/// `act(weyl, a_l)` meeting `a_h` nontrivially, `witness` a primitive
/// integer vector of the intersection, and `combination` its coordinates
/// over the reduced spanning basis of `a_l` (row echelon basis of the
/// spanning set). `zero_products` records `<witness, v_j> = 0` per normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCertificate {
    pub spanning: Vec<CartanPoint>,
    pub normals: Vec<CartanPoint>,
    pub verdict: PairVerdict,
    pub weyl: Option<WeylElement>,
    pub witness: Option<CartanPoint>,
    pub combination: Vec<Rational>,
    pub zero_products: Vec<ExactScalar>,
    pub images_checked: usize,
    pub dim_l: usize,
    pub dim_h: usize,
}

impl PairCertificate {
    pub fn verify(&self) -> Result<bool> {
        let h = SplitSubalgebra::from_points(&self.normals)?;
        Ok(kobayashi_pair_check(&self.spanning, &h)? == *self)
    }
}

/// Decide properness of a reductive pair from its Cartan projections:
/// proper iff `act(s, a_l)` intersects `a_h` trivially for every Weyl
/// element `s`. `a_l` is given by a rational spanning set; the intersection
/// test per distinct image is an exact rank computation
/// `rank[s.B_l | B_h] < dim a_l + dim a_h`.
pub fn kobayashi_pair_check(
    l_spanning: &[CartanPoint],
    h: &SplitSubalgebra,
) -> Result<PairCertificate> {
    let n = h.n();
    for p in l_spanning {
        if p.n() != n {
            return Err(Error::RankMismatch {
                expected: n,
                actual: p.n(),
            });
        }
        if !same_basis(p.basis(), h.basis()) {
            return Err(Error::BasisMismatch);
        }
        if !p.is_rational() {
            return Err(Error::Precondition(
                "the spanning set of a_l must be rational".into(),
            ));
        }
    }
    let spanning_rows: Vec<Vec<Rational>> = l_spanning
        .iter()
        .map(|p| p.as_rationals().expect("checked rational above"))
        .collect();
    let l_basis = linalg::row_space_basis(spanning_rows);
    let dim_l = l_basis.len();
    let dim_h = h.dim();

    if dim_l == 0 {
        return Ok(PairCertificate {
            spanning: l_spanning.to_vec(),
            normals: h.normals().to_vec(),
            verdict: PairVerdict::Degenerate,
            weyl: None,
            witness: None,
            combination: Vec::new(),
            zero_products: Vec::new(),
            images_checked: 0,
            dim_l,
            dim_h,
        });
    }

    // basis of a_h: kernel of the normals within the traceless hyperplane
    let mut constraint_rows = h.normal_rows().to_vec();
    constraint_rows.push(vec![Rational::one(); n]);
    let h_basis = linalg::kernel_basis(&constraint_rows, n);
    debug_assert_eq!(h_basis.len(), dim_h);

    let classes = column_classes(&l_basis, n);
    let mut found: Option<(Vec<Rational>, Vec<Rational>)> = None; // (witness row, combination)

    // scan over images of the l-tuple: the image of b under s has
    // coordinate i equal to b[s^-1(i)], so the dedup key uses s^-1
    let mut seen: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    let mut images_checked = 0usize;
    let mut qualifying: Option<WeylElement> = None;
    for s in WeylElement::all(n) {
        let s_inv = s.inverse();
        let key: Vec<u8> = (0..n).map(|i| classes[s_inv.apply(i)]).collect();
        if !seen.insert(key) {
            continue;
        }
        images_checked += 1;

        // columns: s(b_1), ..., s(b_m), h_1, ..., h_d
        let moved: Vec<Vec<Rational>> = l_basis.iter().map(|b| s.act_rationals(b)).collect();
        let mut m = vec![vec![Rational::zero(); dim_l + dim_h]; n];
        for (c, col) in moved.iter().enumerate() {
            for r in 0..n {
                m[r][c] = col[r].clone();
            }
        }
        for (c, col) in h_basis.iter().enumerate() {
            for r in 0..n {
                m[r][dim_l + c] = col[r].clone();
            }
        }
        let kernel = linalg::kernel_basis(&m, dim_l + dim_h);
        if let Some(coeffs) = kernel.first() {
            // sum_i c_i s(b_i) = -sum_k e_k h_k != 0 lies in both subspaces
            let mut witness_row = vec![Rational::zero(); n];
            for (i, col) in moved.iter().enumerate() {
                for r in 0..n {
                    witness_row[r] += &coeffs[i] * &col[r];
                }
            }
            let primitive = primitive_integer_form(&witness_row)
                .expect("kernel vector yields a nonzero intersection");
            // rescale the combination consistently with the witness
            let scale = {
                let r = witness_row
                    .iter()
                    .position(|q| !q.is_zero())
                    .expect("nonzero");
                &primitive[r] / &witness_row[r]
            };
            let combination = coeffs[..dim_l].iter().map(|c| c * &scale).collect();
            found = Some((primitive, combination));
            qualifying = Some(s);
            break;
        }
    }

    match (qualifying, found) {
        (Some(s), Some((witness_row, combination))) => {
            let witness = CartanPoint::from_rationals(h.basis(), &witness_row)?;
            let zero_products = h
                .normals()
                .iter()
                .map(|v| witness.inner(v))
                .collect::<Result<Vec<_>>>()?;
            debug_assert!(zero_products.iter().all(ExactScalar::is_zero));
            Ok(PairCertificate {
                spanning: l_spanning.to_vec(),
                normals: h.normals().to_vec(),
                verdict: PairVerdict::NotProper,
                weyl: Some(s),
                witness: Some(witness),
                combination,
                zero_products,
                images_checked,
                dim_l,
                dim_h,
            })
        }
        _ => Ok(PairCertificate {
            spanning: l_spanning.to_vec(),
            normals: h.normals().to_vec(),
            verdict: PairVerdict::Proper,
            weyl: None,
            witness: None,
            combination: Vec::new(),
            zero_products: Vec::new(),
            images_checked,
            dim_l,
            dim_h,
        }),
    }
}

// ---------------------------------------------------------------------------
// Stable JSON document form of the certificates.
// ---------------------------------------------------------------------------

/// One rendered equation of a certificate document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationDoc {
    pub lhs: String,
    pub value: String,
}

/// One partition row of an sl2 obstruction document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sl2EntryDoc {
    pub partition: Vec<u32>,
    pub certificate: CertificateDoc,
}

/// The stable JSON shape shared by all certificate kinds:
/// `{"kind": "membership"|"benoist"|"sl2"|"pair", "n": int,
///   "normals": [[str]], "verdict": str, "witness": [str]?, "weyl": [int]?,
///   "equations": [{"lhs": str, "value": str}], "images_checked": int}`
/// plus kind-specific extensions (`witness_certificate`, `entries`,
/// `spanning`, ...). Scalars are strings in the exact textual grammar;
/// `weyl` is a 1-based image array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub kind: String,
    pub n: usize,
    pub normals: Vec<Vec<String>>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl: Option<Vec<usize>>,
    pub equations: Vec<EquationDoc>,
    pub images_checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_certificate: Option<Box<CertificateDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Sl2EntryDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proper_sl2_exists: Option<bool>,
}

fn point_strings(p: &CartanPoint) -> Vec<String> {
    p.entries().iter().map(ExactScalar::to_string).collect()
}

fn points_strings(ps: &[CartanPoint]) -> Vec<Vec<String>> {
    ps.iter().map(point_strings).collect()
}

fn inner_lhs(x: &CartanPoint, y: &CartanPoint) -> String {
    format!("<({x}),({y})>")
}

impl MembershipCertificate {
    pub fn to_doc(&self) -> CertificateDoc {
        let n = self.point.n();
        let equations = match self.verdict {
            MembershipVerdict::Member => {
                let w = self.weyl.as_ref().expect("member carries weyl");
                let mapped = w.act(&self.point).expect("rank agrees");
                self.normals
                    .iter()
                    .zip(&self.zero_products)
                    .map(|(v, value)| EquationDoc {
                        lhs: inner_lhs(&mapped, v),
                        value: value.to_string(),
                    })
                    .collect()
            }
            MembershipVerdict::NonMember => self
                .refutations
                .iter()
                .map(|r| {
                    let image = r
                        .weyl
                        .inverse()
                        .act(&self.normals[r.normal_index])
                        .expect("rank agrees");
                    EquationDoc {
                        lhs: inner_lhs(&self.point, &image),
                        value: r.value.to_string(),
                    }
                })
                .collect(),
        };
        CertificateDoc {
            kind: "membership".into(),
            n,
            normals: points_strings(&self.normals),
            verdict: self.verdict.to_string(),
            witness: Some(point_strings(&self.point)),
            weyl: self.weyl.as_ref().map(WeylElement::one_based_images),
            equations,
            images_checked: self.images_checked,
            witness_strategy: None,
            witness_certificate: None,
            entries: None,
            spanning: None,
            proper_sl2_exists: None,
        }
    }
}

impl BenoistCertificate {
    pub fn to_doc(&self) -> CertificateDoc {
        let n = self.normals[0].n();
        let equations = match self.verdict {
            BenoistVerdict::Holds => Vec::new(),
            BenoistVerdict::Fails => {
                let w_inv = self.weyl.as_ref().expect("fails carries weyl").inverse();
                self.palindromy
                    .iter()
                    .map(|eq| {
                        let u = w_inv
                            .act(&self.normals[eq.normal_index])
                            .expect("rank agrees");
                        EquationDoc {
                            lhs: format!("({u})[{}]-({u})[{}]", eq.position + 1, n - eq.position),
                            value: eq.value.to_string(),
                        }
                    })
                    .collect()
            }
        };
        CertificateDoc {
            kind: "benoist".into(),
            n,
            normals: points_strings(&self.normals),
            verdict: self.verdict.to_string(),
            witness: self.witness.as_ref().map(point_strings),
            weyl: self.weyl.as_ref().map(WeylElement::one_based_images),
            equations,
            images_checked: self.images_checked,
            witness_strategy: Some(self.strategy.to_string()),
            witness_certificate: self
                .witness_membership
                .as_ref()
                .map(|c| Box::new(c.to_doc())),
            entries: None,
            spanning: None,
            proper_sl2_exists: None,
        }
    }
}

impl Sl2Report {
    pub fn to_doc(&self) -> CertificateDoc {
        let n = self.normals[0].n();
        CertificateDoc {
            kind: "sl2".into(),
            n,
            normals: points_strings(&self.normals),
            verdict: if self.proper_sl2_exists {
                "proper_sl2_exists".into()
            } else {
                "no_proper_sl2".into()
            },
            witness: None,
            weyl: None,
            equations: Vec::new(),
            images_checked: self
                .entries
                .iter()
                .map(|e| e.certificate.images_checked)
                .sum(),
            witness_strategy: None,
            witness_certificate: None,
            entries: Some(
                self.entries
                    .iter()
                    .map(|e| Sl2EntryDoc {
                        partition: e.element.partition().parts().to_vec(),
                        certificate: e.certificate.to_doc(),
                    })
                    .collect(),
            ),
            spanning: None,
            proper_sl2_exists: Some(self.proper_sl2_exists),
        }
    }
}

impl PairCertificate {
    pub fn to_doc(&self) -> CertificateDoc {
        let n = self.normals[0].n();
        let equations = match (&self.witness, self.verdict) {
            (Some(witness), PairVerdict::NotProper) => self
                .normals
                .iter()
                .zip(&self.zero_products)
                .map(|(v, value)| EquationDoc {
                    lhs: inner_lhs(witness, v),
                    value: value.to_string(),
                })
                .collect(),
            _ => Vec::new(),
        };
        CertificateDoc {
            kind: "pair".into(),
            n,
            normals: points_strings(&self.normals),
            verdict: self.verdict.to_string(),
            witness: self.witness.as_ref().map(point_strings),
            weyl: self.weyl.as_ref().map(WeylElement::one_based_images),
            equations,
            images_checked: self.images_checked,
            witness_strategy: None,
            witness_certificate: None,
            entries: None,
            spanning: Some(points_strings(&self.spanning)),
            proper_sl2_exists: None,
        }
    }
}

fn parse_points(basis: &Arc<IrrationalBasis>, rows: &[Vec<String>]) -> Result<Vec<CartanPoint>> {
    rows.iter()
        .map(|row| {
            let entries = row
                .iter()
                .map(|s| ExactScalar::parse(basis, s))
                .collect::<Result<Vec<_>>>()?;
            CartanPoint::new(entries)
        })
        .collect()
}

/// Replay a certificate document: reconstruct the inputs, rerun the
/// decision procedure, and compare the recomputed document with the given
/// one. Returns `Ok(true)` iff they agree exactly.
pub fn replay_doc(doc: &CertificateDoc, basis: &Arc<IrrationalBasis>) -> Result<bool> {
    let normals = parse_points(basis, &doc.normals)?;
    let h = SplitSubalgebra::from_points(&normals)?;
    let recomputed = match doc.kind.as_str() {
        "membership" => {
            let witness = doc
                .witness
                .as_ref()
                .ok_or_else(|| Error::Precondition("membership document lacks its point".into()))?;
            let point = parse_points(basis, std::slice::from_ref(witness))?.remove(0);
            weyl_membership(&point, &h)?.to_doc()
        }
        "benoist" => {
            let strategy = match doc.witness_strategy.as_deref() {
                Some("rational") => WitnessStrategy::Rational,
                _ => WitnessStrategy::Symbolic,
            };
            benoist_check_with(&h, strategy)?.to_doc()
        }
        "sl2" => sl2_obstruction(&h)?.to_doc(),
        "pair" => {
            let spanning = doc.spanning.as_ref().ok_or_else(|| {
                Error::Precondition("pair document lacks its spanning set".into())
            })?;
            let l = parse_points(basis, spanning)?;
            kobayashi_pair_check(&l, &h)?.to_doc()
        }
        other => {
            return Err(Error::Precondition(format!(
                "unknown certificate kind '{other}'"
            )));
        }
    };
    Ok(recomputed == *doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2_orbits::{a_phi, Partition};

    fn basis() -> Arc<IrrationalBasis> {
        IrrationalBasis::sqrt_primes(4)
    }

    fn shipped_h(basis: &Arc<IrrationalBasis>) -> SplitSubalgebra {
        let v = CartanPoint::from_integers(basis, &[6, 6, 1, -4, -9]).unwrap();
        SplitSubalgebra::from_points(&[v]).unwrap()
    }

    #[test]
    fn shipped_subalgebra_has_dimension_three() {
        let b = basis();
        assert_eq!(shipped_h(&b).dim(), 3);
    }

    #[test]
    fn normals_are_canonicalized() {
        let b = basis();
        // non-traceless input is projected, scaled, and sign-normalized
        let rows = vec![vec![
            Rational::new(4.into(), 1.into()),
            Rational::new(2.into(), 1.into()),
            Rational::new(3.into(), 1.into()),
        ]];
        let h = SplitSubalgebra::new(&b, 3, &rows).unwrap();
        assert_eq!(
            h.normals()[0],
            CartanPoint::from_integers(&b, &[1, -1, 0]).unwrap()
        );
        assert_eq!(h.dim(), 1);
    }

    #[test]
    fn rejects_empty_zero_and_dependent_normals() {
        let b = basis();
        assert!(SplitSubalgebra::new(&b, 5, &[]).is_err());
        let zero = vec![vec![Rational::one(); 5]]; // projects to zero
        assert!(SplitSubalgebra::new(&b, 5, &zero).is_err());
        let v = CartanPoint::from_integers(&b, &[6, 6, 1, -4, -9]).unwrap();
        let v2 = v.scale(&Rational::new((-2).into(), 3.into()));
        assert!(SplitSubalgebra::from_points(&[v, v2]).is_err());
    }

    #[test]
    fn distinct_images_count_for_the_shipped_normal() {
        let b = basis();
        let images = distinct_images(&shipped_h(&b)).unwrap();
        // one repeated entry: 5!/2! = 60 distinct images
        assert_eq!(images.len(), 60);
        let wanted = CartanPoint::from_integers(&b, &[6, -9, -4, 6, 1]).unwrap();
        assert!(images.iter().any(|tuple| tuple[0] == wanted));
    }

    #[test]
    fn membership_of_a_22_1_element() {
        let b = basis();
        let h = shipped_h(&b);
        let x = CartanPoint::from_integers(&b, &[1, 1, 0, -1, -1]).unwrap();
        let cert = weyl_membership(&x, &h).unwrap();
        assert_eq!(cert.verdict, MembershipVerdict::Member);
        let w = cert.weyl.clone().unwrap();
        let mapped = w.act(&x).unwrap();
        assert!(mapped.inner(&h.normals()[0]).unwrap().is_zero());
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn zero_point_is_member_via_identity() {
        let b = basis();
        let h = shipped_h(&b);
        let zero = CartanPoint::from_integers(&b, &[0; 5]).unwrap();
        let cert = weyl_membership(&zero, &h).unwrap();
        assert_eq!(cert.verdict, MembershipVerdict::Member);
        assert!(cert.weyl.unwrap().is_identity());
        assert_eq!(cert.images_checked, 1);
    }

    #[test]
    fn symbolic_point_is_not_a_member_with_sixty_images() {
        let b = basis();
        let h = shipped_h(&b);
        let x = CartanPoint::parse(&b, "sqrt2,1,0,-1,-sqrt2").unwrap();
        let cert = weyl_membership(&x, &h).unwrap();
        assert_eq!(cert.verdict, MembershipVerdict::NonMember);
        assert_eq!(cert.images_checked, 60);
        assert_eq!(cert.refutations.len(), 60);
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn benoist_holds_for_the_shipped_normal() {
        let b = basis();
        let cert = benoist_check(&shipped_h(&b)).unwrap();
        assert_eq!(cert.verdict, BenoistVerdict::Holds);
        let witness = cert.witness.clone().unwrap();
        assert_eq!(witness.to_string(), "sqrt3,sqrt2,0,-sqrt2,-sqrt3");
        assert!(witness.in_b_plus().unwrap());
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn benoist_fails_on_a_palindromizable_normal() {
        let b = basis();
        let v = CartanPoint::from_integers(&b, &[1, 1, -1, -1, 0]).unwrap();
        let h = SplitSubalgebra::from_points(&[v]).unwrap();
        let cert = benoist_check(&h).unwrap();
        assert_eq!(cert.verdict, BenoistVerdict::Fails);
        let w_inv = cert.weyl.clone().unwrap().inverse();
        let image = w_inv.act(&h.normals()[0]).unwrap();
        assert_eq!(
            image,
            image.minus_w0().scale(&Rational::from_integer((-1).into()))
        );
        assert!(cert.palindromy.iter().all(|eq| eq.value.is_zero()));
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn benoist_fails_via_identity_for_palindromic_normals() {
        // palindromic normals contain the whole cone span in their kernel
        let b = basis();
        let v1 = CartanPoint::from_integers(&b, &[1, 0, -2, 0, 1]).unwrap();
        let v2 = CartanPoint::from_integers(&b, &[0, 1, -2, 1, 0]).unwrap();
        let h = SplitSubalgebra::from_points(&[v1, v2]).unwrap();
        let cert = benoist_check(&h).unwrap();
        assert_eq!(cert.verdict, BenoistVerdict::Fails);
        assert!(cert.weyl.as_ref().unwrap().is_identity());
        assert!(cert.palindromy.iter().all(|eq| eq.value.is_zero()));
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn benoist_holds_for_normals_spanning_the_cone_span() {
        // the cone-span basis vectors themselves are antisymmetric, never
        // palindromic, so no simultaneous image can kill the cone
        let b = basis();
        let v1 = CartanPoint::from_integers(&b, &[1, 0, 0, 0, -1]).unwrap();
        let v2 = CartanPoint::from_integers(&b, &[0, 1, 0, -1, 0]).unwrap();
        let h = SplitSubalgebra::from_points(&[v1, v2]).unwrap();
        let cert = benoist_check(&h).unwrap();
        assert_eq!(cert.verdict, BenoistVerdict::Holds);
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn rational_witness_for_the_shipped_normal() {
        // smallest-height escape from all 60 images; the brute-force oracle
        // in the integration tests pins the same point and confirms that
        // (2,1), (3,1), (3,2) are all members
        let b = basis();
        let h = shipped_h(&b);
        let w = benoist_witness(&h, WitnessStrategy::Rational).unwrap();
        assert_eq!(
            w,
            CartanPoint::from_integers(&b, &[4, 1, 0, -1, -4]).unwrap()
        );
        let cert = benoist_check_with(&h, WitnessStrategy::Rational).unwrap();
        assert_eq!(cert.verdict, BenoistVerdict::Holds);
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn five_one_point_also_escapes_every_image() {
        let b = basis();
        let h = shipped_h(&b);
        let x = CartanPoint::from_integers(&b, &[5, 1, 0, -1, -5]).unwrap();
        let cert = weyl_membership(&x, &h).unwrap();
        assert_eq!(cert.verdict, MembershipVerdict::NonMember);
        assert_eq!(cert.images_checked, 60);
    }

    #[test]
    fn benoist_witness_precondition() {
        let b = basis();
        let v = CartanPoint::from_integers(&b, &[1, 1, -1, -1, 0]).unwrap();
        let h = SplitSubalgebra::from_points(&[v]).unwrap();
        assert!(matches!(
            benoist_witness(&h, WitnessStrategy::Symbolic),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sl2_obstruction_all_member_for_the_shipped_normal() {
        let b = basis();
        let report = sl2_obstruction(&shipped_h(&b)).unwrap();
        assert_eq!(report.entries.len(), 7);
        assert!(report
            .entries
            .iter()
            .all(|e| e.certificate.verdict == MembershipVerdict::Member));
        assert!(!report.proper_sl2_exists);
        assert!(report.verify().unwrap());
    }

    #[test]
    fn pair_check_detects_the_non_proper_sl2_direction() {
        let b = basis();
        let h = shipped_h(&b);
        let p = Partition::new(vec![4, 1]).unwrap();
        let l = vec![a_phi(&b, &p).unwrap().point().clone()];
        let cert = kobayashi_pair_check(&l, &h).unwrap();
        assert_eq!(cert.verdict, PairVerdict::NotProper);
        let witness = cert.witness.clone().unwrap();
        assert!(!witness.is_zero());
        assert!(witness.inner(&h.normals()[0]).unwrap().is_zero());
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn pair_check_of_h_against_itself_is_not_proper_via_identity() {
        let b = basis();
        let h = shipped_h(&b);
        // a_l = a_h, spanned by a kernel basis of the normal
        let mut rows = h.normal_rows().to_vec();
        rows.push(vec![Rational::one(); 5]);
        let l: Vec<CartanPoint> = crate::linalg::kernel_basis(&rows, 5)
            .iter()
            .map(|r| CartanPoint::from_rationals(&b, r).unwrap())
            .collect();
        let cert = kobayashi_pair_check(&l, &h).unwrap();
        assert_eq!(cert.verdict, PairVerdict::NotProper);
        assert!(cert.weyl.unwrap().is_identity());
    }

    #[test]
    fn pair_check_proper_for_a_non_member_line() {
        let b = basis();
        let h = shipped_h(&b);
        let l = vec![CartanPoint::from_integers(&b, &[5, 1, 0, -1, -5]).unwrap()];
        let cert = kobayashi_pair_check(&l, &h).unwrap();
        assert_eq!(cert.verdict, PairVerdict::Proper);
        // dedup runs over images of the l-tuple, whose entries are distinct
        assert_eq!(cert.images_checked, 120);
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn pair_check_degenerate_for_zero_subspace() {
        let b = basis();
        let h = shipped_h(&b);
        let l = vec![CartanPoint::from_integers(&b, &[0; 5]).unwrap()];
        let cert = kobayashi_pair_check(&l, &h).unwrap();
        assert_eq!(cert.verdict, PairVerdict::Degenerate);
    }

    #[test]
    fn docs_replay() {
        let b = basis();
        let h = shipped_h(&b);
        let x = CartanPoint::parse(&b, "sqrt2,1,0,-1,-sqrt2").unwrap();
        let docs = vec![
            weyl_membership(&x, &h).unwrap().to_doc(),
            benoist_check(&h).unwrap().to_doc(),
            sl2_obstruction(&h).unwrap().to_doc(),
            kobayashi_pair_check(
                &[CartanPoint::from_integers(&b, &[5, 1, 0, -1, -5]).unwrap()],
                &h,
            )
            .unwrap()
            .to_doc(),
        ];
        for doc in docs {
            assert!(replay_doc(&doc, &b).unwrap(), "kind {}", doc.kind);
            // and a tampered verdict must not replay
            let mut bad = doc.clone();
            bad.verdict = "tampered".into();
            assert!(!replay_doc(&bad, &b).unwrap());
        }
    }

    #[test]
    fn doc_json_round_trip_for_every_kind() {
        let b = basis();
        let h = shipped_h(&b);
        let x = CartanPoint::from_integers(&b, &[1, 1, 0, -1, -1]).unwrap();
        let docs = vec![
            weyl_membership(&x, &h).unwrap().to_doc(),
            benoist_check(&h).unwrap().to_doc(),
            sl2_obstruction(&h).unwrap().to_doc(),
            kobayashi_pair_check(std::slice::from_ref(&x), &h)
                .unwrap()
                .to_doc(),
        ];
        for doc in docs {
            let text = serde_json::to_string(&doc).unwrap();
            let back: CertificateDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back, doc, "kind {}", doc.kind);
        }
    }
}
