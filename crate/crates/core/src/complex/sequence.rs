use super::cochain::{coboundary, extend_by_zero};
use super::cohomology::{cohomology, induced_pullback, CohomologyGroup};
use super::simplicial::{SimplicialMap, SimplicialPair};
use crate::error::Result;
use crate::exactalg::{FinAbGroup, GroupElement, Homomorphism};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

/// The segment `Hq(X) →ι Hq(A) →∂ Hq+1(X,A) →g Hq+1(X)` of the long exact
/// sequence of a pair, with its groups and maps.
pub struct SequenceSegment {
    pub h_x: Arc<CohomologyGroup>,
    pub h_a: Arc<CohomologyGroup>,
    pub h_rel: Arc<CohomologyGroup>,
    pub h_x_next: Arc<CohomologyGroup>,
    pub iota: Homomorphism,
    pub connecting: Homomorphism,
    pub g: Homomorphism,
    /// Inclusion of `A` (as a standalone complex) into `X`.
    pub inclusion: SimplicialMap,
}

/// Exactness data of a [`SequenceSegment`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessReport {
    pub q: usize,
    pub h_x: Vec<u64>,
    pub h_a: Vec<u64>,
    pub h_rel: Vec<u64>,
    pub h_x_next: Vec<u64>,
    pub iota_injective: bool,
    pub image_iota: u128,
    pub kernel_connecting: u128,
    pub exact_at_a: bool,
    pub image_connecting: u128,
    pub kernel_g: u128,
    pub exact_at_rel: bool,
    pub g_surjective: bool,
    pub first_failure: Option<String>,
}

impl ExactnessReport {
    /// True if `0 → Hq(X) → Hq(A) → Hq+1(X,A) → Hq+1(X) → 0` is exact.
    pub fn short_exact(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Builds the segment in degree `q`.
pub fn sequence_segment(pair: &SimplicialPair, q: usize, g: &FinAbGroup) -> Result<SequenceSegment> {
    let (a, inclusion) = pair.sub.to_complex(&pair.total);
    let absolute = SimplicialPair::absolute(pair.total.clone());
    let h_x = cohomology(&absolute, q, g);
    let h_a = cohomology(&SimplicialPair::absolute(a), q, g);
    let h_rel = cohomology(pair, q + 1, g);
    let h_x_next = cohomology(&absolute, q + 1, g);
    let iota = induced_pullback(&inclusion, &h_x, &h_a)?;
    let images: Vec<GroupElement> = h_a
        .generators()
        .iter()
        .map(|b| h_rel.class_of(&coboundary(&pair.total, &extend_by_zero(&inclusion, b, g), g)))
        .collect::<Result<_>>()?;
    let connecting = Homomorphism::from_images(h_a.group().clone(), h_rel.group().clone(), &images)?;
    let images: Vec<GroupElement> = h_rel.generators().iter().map(|c| h_x_next.class_of(c)).collect::<Result<_>>()?;
    let gmap = Homomorphism::from_images(h_rel.group().clone(), h_x_next.group().clone(), &images)?;
    Ok(SequenceSegment { h_x, h_a, h_rel, h_x_next, iota, connecting, g: gmap, inclusion })
}

/// Checks exactness of the segment by enumerating images and kernels.
pub fn long_exact_sequence_check(pair: &SimplicialPair, q: usize, g: &FinAbGroup) -> Result<ExactnessReport> {
    let s = sequence_segment(pair, q, g)?;
    let im_iota = s.iota.image()?;
    let ker_conn: BTreeSet<GroupElement> = s.connecting.kernel()?.into_iter().collect();
    let im_conn = s.connecting.image()?;
    let ker_g: BTreeSet<GroupElement> = s.g.kernel()?.into_iter().collect();
    let iota_injective = im_iota.len() as u128 == s.h_x.order();
    let g_surjective = s.g.is_surjective()?;
    let exact_at_a = im_iota == ker_conn;
    let exact_at_rel = im_conn == ker_g;
    let first_failure = if !iota_injective {
        Some("iota is not injective".to_string())
    } else if !exact_at_a {
        Some("image of iota differs from the kernel of the connecting map".to_string())
    } else if !exact_at_rel {
        Some("image of the connecting map differs from the kernel of g".to_string())
    } else if !g_surjective {
        Some("g is not surjective".to_string())
    } else {
        None
    };
    Ok(ExactnessReport {
        q,
        h_x: s.h_x.group().factors().to_vec(),
        h_a: s.h_a.group().factors().to_vec(),
        h_rel: s.h_rel.group().factors().to_vec(),
        h_x_next: s.h_x_next.group().factors().to_vec(),
        iota_injective,
        image_iota: im_iota.len() as u128,
        kernel_connecting: ker_conn.len() as u128,
        exact_at_a,
        image_connecting: im_conn.len() as u128,
        kernel_g: ker_g.len() as u128,
        exact_at_rel,
        g_surjective,
        first_failure,
    })
}
