use serde::{Deserialize, Serialize};

use super::dataset::{require_rows, SignatureDataset};
use super::linalg::{dot, jacobi_eigen, mat_vec, Matrix};
use crate::error::Result;
use crate::invariants::TypeLabel;

/// How signature vectors are scaled before the covariance is formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Each coordinate centered and divided by its population standard
    /// deviation; constant coordinates become 0.
    #[default]
    ZScore,
    /// `|Id|`, `|Con|` and `|Aut|` divided by `n`, then every coordinate
    /// centered.
    PerOrder,
}

impl Normalization {
    pub fn name(&self) -> &'static str {
        match self {
            Normalization::ZScore => "z-score",
            Normalization::PerOrder => "per-order",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaPoint {
    pub canon_hash: String,
    pub type_label: TypeLabel,
    pub pc1: f64,
    pub pc2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaProjection {
    pub normalization: Normalization,
    pub mean: [f64; 6],
    /// Divisor per coordinate (1 where nothing is scaled).
    pub scale: [f64; 6],
    /// Population covariance of the normalized vectors.
    pub covariance: Matrix,
    /// All six eigenvalues, descending, tiny negatives clamped to 0.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvectors matching `eigenvalues`.
    pub eigenvectors: Vec<Vec<f64>>,
    pub points: Vec<PcaPoint>,
    /// Every normalized coordinate is constant; all points sit at the origin.
    pub zero_variance: bool,
    pub sweeps: usize,
    pub converged: bool,
}

/// Eigenvalues this close to 0 from below are reported as 0.
const CLAMP: f64 = 1e-12;

pub fn pca_projection(ds: &SignatureDataset, normalization: Normalization) -> Result<PcaProjection> {
    require_rows(ds, 2, "PCA")?;
    let raw = ds.vectors();
    let m = raw.len() as f64;
    let pre: Vec<[f64; 6]> = match normalization {
        Normalization::ZScore => raw.clone(),
        Normalization::PerOrder => raw
            .iter()
            .map(|v| [v[0], v[1], v[2] / v[0], v[3] / v[0], v[4] / v[0], v[5]])
            .collect(),
    };
    let mut mean = [0.0; 6];
    for v in &pre {
        for k in 0..6 {
            mean[k] += v[k] / m;
        }
    }
    let mut scale = [1.0; 6];
    if normalization == Normalization::ZScore {
        for k in 0..6 {
            let var = pre.iter().map(|v| (v[k] - mean[k]).powi(2)).sum::<f64>() / m;
            scale[k] = if var > 0.0 { var.sqrt() } else { 0.0 };
        }
    }
    let normalized: Vec<[f64; 6]> = pre
        .iter()
        .map(|v| std::array::from_fn(|k| if scale[k] == 0.0 { 0.0 } else { (v[k] - mean[k]) / scale[k] }))
        .collect();
    let mut cov: Matrix = vec![vec![0.0; 6]; 6];
    for v in &normalized {
        for i in 0..6 {
            for j in 0..6 {
                cov[i][j] += v[i] * v[j] / m;
            }
        }
    }
    let zero_variance = cov.iter().flatten().all(|&x| x == 0.0);
    let eig = jacobi_eigen(&cov);
    let eigenvalues: Vec<f64> = eig
        .values
        .iter()
        .map(|&l| if l < 0.0 && l > -CLAMP { 0.0 } else { l })
        .collect();
    let points = ds
        .rows
        .iter()
        .zip(&normalized)
        .map(|(r, v)| PcaPoint {
            canon_hash: r.canon_hash.clone(),
            type_label: r.type_label,
            pc1: if zero_variance { 0.0 } else { dot(v, &eig.vectors[0]) },
            pc2: if zero_variance { 0.0 } else { dot(v, &eig.vectors[1]) },
        })
        .collect();
    Ok(PcaProjection {
        normalization,
        mean,
        scale,
        covariance: cov,
        eigenvalues,
        eigenvectors: eig.vectors,
        points,
        zero_variance,
        sweeps: eig.sweeps,
        converged: eig.converged,
    })
}

impl PcaProjection {
    /// `‖C v − λ v‖` for every eigenpair.
    pub fn eigen_residuals(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(l, v)| {
                let cv = mat_vec(&self.covariance, v);
                cv.iter().zip(v).map(|(a, b)| (a - l * b).powi(2)).sum::<f64>().sqrt()
            })
            .collect()
    }

    /// Applies this projection's normalization to a raw signature vector.
    pub fn normalize(&self, raw: &[f64; 6]) -> [f64; 6] {
        let pre = match self.normalization {
            Normalization::ZScore => *raw,
            Normalization::PerOrder => [raw[0], raw[1], raw[2] / raw[0], raw[3] / raw[0], raw[4] / raw[0], raw[5]],
        };
        std::array::from_fn(|k| {
            if self.scale[k] == 0.0 {
                0.0
            } else {
                (pre[k] - self.mean[k]) / self.scale[k]
            }
        })
    }

    /// Largest error when each normalized row is projected on all six
    /// components and rebuilt.
    pub fn reconstruction_error(&self, ds: &SignatureDataset) -> f64 {
        ds.vectors()
            .iter()
            .map(|raw| {
                let x = self.normalize(raw);
                let mut back = [0.0; 6];
                for v in &self.eigenvectors {
                    let c = dot(&x, v);
                    back.iter_mut().zip(v).for_each(|(b, vi)| *b += c * vi);
                }
                back.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Point coordinates as CSV: `canon_hash,type_label,pc1,pc2`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for p in &self.points {
            w.serialize(p).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    /// Gnuplot script drawing `csv_name`, one series per type label.
    pub fn gnuplot_script(&self, csv_name: &str) -> String {
        let mut labels: Vec<TypeLabel> = self.points.iter().map(|p| p.type_label).collect();
        labels.sort();
        labels.dedup();
        let series: Vec<String> = labels
            .iter()
            .map(|l| {
                format!(
                    "'{csv_name}' using (strcol(2) eq '{0}' ? $3 : 1/0):4 with points pt 7 title '{0}'",
                    l.name()
                )
            })
            .collect();
        format!(
            "set datafile separator ','\nset key outside\nset xlabel 'PC1 ({:.4})'\nset ylabel 'PC2 ({:.4})'\nplot {}\n",
            self.eigenvalues.first().copied().unwrap_or(0.0),
            self.eigenvalues.get(1).copied().unwrap_or(0.0),
            if series.is_empty() { "NaN notitle".to_string() } else { series.join(", \\\n     ") },
        )
    }
}
