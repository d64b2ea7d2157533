//! The exceptional quartic K over F_4 and its PGL(3,4) orbit.

use std::collections::HashSet;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::AnalysisError;
use crate::form::{monomials, HomogeneousForm};
use crate::gf::{FieldId, FieldSpec};
use crate::projgeom::enumerate_pgl;

/// K in the text syntax; its 14 F_4-points are P^2(F_4) minus P^2(F_2).
pub const K_TEXT: &str = "(x0+x1+x2)^4 + (x0*x1+x1*x2+x2*x0)^2 + x0*x1*x2*(x0+x1+x2)";

const F4: FieldId = FieldId { p: 2, e: 2 };
const CACHE_MAGIC: &[u8; 4] = b"LFKO";
const CACHE_VERSION: u32 = 1;
/// Environment variable naming a directory for the on-disk orbit cache.
pub const CACHE_ENV: &str = "LINEFREE_CACHE_DIR";

pub fn k_form(field: &Arc<FieldSpec>) -> Result<HomogeneousForm, AnalysisError> {
    if field.id() != F4 {
        return Err(AnalysisError::WrongShape("the field F_4"));
    }
    Ok(HomogeneousForm::parse_in(K_TEXT, field, 3)?)
}

/// Packs a coefficient vector of a plane quartic over F_4 into 30 bits,
/// first monomial in the top bits.
pub fn pack_quartic(coeffs: &[u32]) -> u32 {
    debug_assert_eq!(coeffs.len(), 15);
    coeffs.iter().fold(0u32, |acc, &c| (acc << 2) | c)
}

/// Monic representatives of every form projectively equivalent to K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KOrbit {
    keys: HashSet<u32>,
}

impl KOrbit {
    /// Applies every element of PGL(3,4) to K.
    pub fn compute() -> Self {
        let field = FieldSpec::new(2, 2).expect("F_4");
        let k = k_form(&field).expect("F_4");
        let maps = enumerate_pgl(2, &field).expect("PGL(3,4) is small");
        let keys = maps
            .par_iter()
            .map(|m| pack_quartic(&k.substitute_matrix(&m.raw()).monic().coefficient_vector()))
            .collect();
        Self { keys }
    }

    /// The process-wide orbit, computed on first use. When `LINEFREE_CACHE_DIR`
    /// is set, the orbit is read from (or written to) a file there.
    pub fn shared() -> &'static KOrbit {
        static ORBIT: OnceLock<KOrbit> = OnceLock::new();
        ORBIT.get_or_init(|| match std::env::var_os(CACHE_ENV) {
            Some(dir) => {
                let path = PathBuf::from(dir).join("k_orbit_v1.bin");
                if let Ok(orbit) = Self::load(&path) {
                    return orbit;
                }
                let orbit = Self::compute();
                // A cache that cannot be written is not an error.
                let _ = orbit.save(&path);
                orbit
            }
            None => Self::compute(),
        })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains_packed(&self, key: u32) -> bool {
        self.keys.contains(&key)
    }

    /// Whether the coefficient vector, scaled to be monic, lies in the orbit.
    pub fn contains_vector(&self, coeffs: &[u32]) -> bool {
        let field = FieldSpec::new(2, 2).expect("F_4");
        let Some(&lead) = coeffs.iter().find(|&&c| c != 0) else {
            return false;
        };
        let inv = field.inv_idx(lead).expect("nonzero");
        let monic: Vec<u32> = coeffs.iter().map(|&c| field.mul_idx(c, inv)).collect();
        self.contains_packed(pack_quartic(&monic))
    }

    /// Sorted packed keys.
    pub fn keys(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.keys.iter().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        let keys = self.keys();
        let mut buf = Vec::with_capacity(12 + 4 * keys.len());
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        buf.extend_from_slice(&(keys.len() as u32).to_le_bytes());
        for k in keys {
            buf.extend_from_slice(&k.to_le_bytes());
        }
        let tmp = path.with_extension("tmp");
        std::fs::File::create(&tmp)?.write_all(&buf)?;
        std::fs::rename(tmp, path)
    }

    pub fn load(path: &Path) -> io::Result<Self> {
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        let bad = || io::Error::new(io::ErrorKind::InvalidData, "bad K orbit cache");
        if buf.len() < 12 || &buf[..4] != CACHE_MAGIC {
            return Err(bad());
        }
        let word = |i: usize| u32::from_le_bytes(buf[i..i + 4].try_into().expect("4 bytes"));
        if word(4) != CACHE_VERSION {
            return Err(bad());
        }
        let count = word(8) as usize;
        if buf.len() != 12 + 4 * count {
            return Err(bad());
        }
        let keys = (0..count).map(|i| word(12 + 4 * i)).collect();
        Ok(Self { keys })
    }
}

/// Whether a plane quartic over F_4 is projectively equivalent to K.
pub fn is_equivalent_to_k(g: &HomogeneousForm) -> Result<bool, AnalysisError> {
    if g.field().id() != F4 || g.n_vars() != 3 || g.degree() != 4 {
        return Err(AnalysisError::WrongShape("a plane quartic over F_4"));
    }
    debug_assert_eq!(monomials(3, 4).len(), 15);
    Ok(KOrbit::shared().contains_vector(&g.coefficient_vector()))
}
