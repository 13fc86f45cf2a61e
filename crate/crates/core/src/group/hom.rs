//! Homomorphisms between permutation groups.
//!
//! A homomorphism `φ: G → H` is stored as the images of the generators of
//! `G`. Everything else goes through the graph subgroup
//! `D = ⟨(g, φ(g))⟩ ≤ Sym(Ω_G ⊔ Ω_H)`: the generator table extends to a
//! homomorphism exactly when `|D| = |G|`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::chain::StabChain;
use super::PermGroup;

#[derive(Clone)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
    image: Arc<OnceLock<PermGroup>>,
    graph: Arc<OnceLock<Graph>>,
}

struct Graph {
    group: PermGroup,
    /// Chain with a base of the source first.
    by_source: Arc<StabChain>,
    /// Chain with a base of the image first.
    by_target: OnceLock<Arc<StabChain>>,
}

impl GroupHom {
    /// Checks that the generator table extends to a homomorphism into `target`.
    pub fn new(source: &PermGroup, target: &PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.degree() != target.degree() {
                return Err(Error::DegreeMismatch {
                    expected: target.degree(),
                    found: img.degree(),
                });
            }
            if !target.contains(img) {
                return Err(Error::NotAHomomorphism(format!(
                    "image of generator {i} is not in the target group"
                )));
            }
        }
        let hom = Self::trusted(source, target, images);
        let graph = hom.graph_group();
        let checked = PermGroup::new(graph.degree(), graph.generators().to_vec())?;
        if checked.order() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "graph subgroup has order {}, source has order {}",
                checked.order(),
                source.order()
            )));
        }
        Ok(hom)
    }

    /// Skips the graph-order check; the caller guarantees the map is a homomorphism.
    pub(crate) fn trusted(source: &PermGroup, target: &PermGroup, images: Vec<Permutation>) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
            image: Arc::new(OnceLock::new()),
            graph: Arc::new(OnceLock::new()),
        }
    }

    pub fn identity(g: &PermGroup) -> Self {
        Self::trusted(g, g, g.generators().to_vec())
    }

    /// The homomorphism given by a permutation action of `source` on
    /// `degree` points; the target is the image group.
    pub fn from_action(
        source: &PermGroup,
        degree: usize,
        act: impl Fn(&Permutation) -> Permutation,
    ) -> Self {
        let images: Vec<Permutation> = source.generators().iter().map(act).collect();
        let target = PermGroup::from_parts(degree, images.clone());
        Self::trusted(source, &target, images)
    }

    /// Restriction of `source` to an invariant union of orbits, as an epimorphism.
    pub fn restriction(source: &PermGroup, points: &[usize]) -> Result<Self> {
        let index = source.point_index(points)?;
        Ok(Self::from_action(source, points.len(), |g| g.restrict(points, &index)))
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    /// The image `φ(G)` as a subgroup of the target.
    pub fn image_group(&self) -> PermGroup {
        self.image
            .get_or_init(|| self.target.subgroup(self.images.clone()))
            .clone()
    }

    pub fn is_epi(&self) -> bool {
        self.image_group().order() == self.target.order()
    }

    fn graph_group(&self) -> PermGroup {
        let gens = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, h)| g.juxtapose(h))
            .collect();
        PermGroup::from_parts(self.source.degree() + self.target.degree(), gens)
    }

    fn graph(&self) -> &Graph {
        self.graph.get_or_init(|| {
            let group = self.graph_group();
            let prefix = self.source.chain().base();
            let by_source = Arc::new(
                StabChain::with_known_order(
                    group.degree(),
                    group.generators(),
                    &prefix,
                    self.source.order(),
                    0x6772_6170_68,
                )
                .expect("graph subgroup of a homomorphism is isomorphic to the source"),
            );
            Graph {
                group,
                by_source,
                by_target: OnceLock::new(),
            }
        })
    }

    fn chain_by_target(&self) -> &StabChain {
        let graph = self.graph();
        graph.by_target.get_or_init(|| {
            let n = self.source.degree();
            let prefix: Vec<usize> = self
                .image_group()
                .chain()
                .base()
                .iter()
                .map(|&b| b + n)
                .collect();
            Arc::new(
                StabChain::with_known_order(
                    graph.group.degree(),
                    graph.group.generators(),
                    &prefix,
                    self.source.order(),
                    0x6772_6170_69,
                )
                .expect("graph subgroup of a homomorphism is isomorphic to the source"),
            )
        })
    }

    /// `φ(g)`; `g` must lie in the source group.
    pub fn apply(&self, g: &Permutation) -> Permutation {
        let n = self.source.degree();
        let m = self.target.degree();
        let chain = &self.graph().by_source;
        let depth = self.source.chain().base().len();
        let mut h = g.juxtapose(&Permutation::identity(m));
        for level in chain.levels.iter().take(depth) {
            let x = h.apply(level.base_point);
            assert!(level.in_orbit(x), "element is not in the source group");
            level.strip(&mut h);
        }
        debug_assert!((0..n).all(|x| h.apply(x) == x));
        let residue = Permutation::from_raw((n..n + m).map(|x| (h.apply(x) - n) as u32).collect());
        residue.inverse()
    }

    /// Some `g` in the source with `φ(g) = h`; `h` must lie in the image.
    pub fn lift(&self, h: &Permutation) -> Permutation {
        let n = self.source.degree();
        let chain = self.chain_by_target();
        let depth = self.image_group().chain().base().len();
        let mut x = Permutation::identity(n).juxtapose(h);
        for level in chain.levels.iter().take(depth) {
            let y = x.apply(level.base_point);
            assert!(level.in_orbit(y), "element is not in the image");
            level.strip(&mut x);
        }
        let residue = Permutation::from_raw((0..n).map(|p| x.apply(p) as u32).collect());
        residue.inverse()
    }

    /// `ker φ` as a subgroup of the source.
    pub fn kernel(&self) -> PermGroup {
        let n = self.source.degree();
        let chain = self.chain_by_target();
        let depth = self.image_group().chain().base().len();
        let gens = chain
            .stabilizer_gens(depth)
            .iter()
            .map(|g| Permutation::from_raw((0..n).map(|p| g.apply(p) as u32).collect()))
            .collect();
        let kernel = self.source.subgroup(gens);
        debug_assert_eq!(
            kernel.order() * self.image_group().order(),
            self.source.order()
        );
        kernel
    }

    /// `φ(H)` for a subgroup `H` of the source.
    pub fn image_of(&self, h: &PermGroup) -> PermGroup {
        self.target
            .subgroup(h.generators().iter().map(|g| self.apply(g)).collect())
    }

    /// `φ⁻¹(K)` for a subgroup `K` of the target.
    pub fn preimage(&self, k: &PermGroup) -> Result<PermGroup> {
        let image = self.image_group();
        let inter = if k.is_subgroup_of(&image) {
            k.generators().to_vec()
        } else if image.is_subgroup_of(k) {
            image.generators().to_vec()
        } else {
            return Err(Error::Precondition(
                "preimage needs a subgroup of the image (or a supergroup of it)".into(),
            ));
        };
        let mut gens = self.kernel().generators().to_vec();
        gens.extend(inter.iter().map(|h| self.lift(h)));
        Ok(self.source.subgroup(gens))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupHom) -> GroupHom {
        let images = self.images.iter().map(|h| next.apply(h)).collect();
        Self::trusted(&self.source, &next.target, images)
    }

    /// The restriction of `φ` to a subgroup of the source, onto its image.
    pub fn restrict_to(&self, h: &PermGroup) -> GroupHom {
        let images: Vec<Permutation> = h.generators().iter().map(|g| self.apply(g)).collect();
        Self::trusted(h, &self.target, images)
    }

    /// The same map with the target replaced by the image group.
    pub fn onto_image(&self) -> GroupHom {
        Self::trusted(&self.source, &self.image_group(), self.images.clone())
    }
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHom")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("images", &self.images)
            .finish()
    }
}
