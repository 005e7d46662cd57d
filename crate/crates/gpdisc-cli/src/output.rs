//! Result records and file emission: CSV and JSON always, SVG line/scatter
//! plots on request, binary field snapshots in the documented format.

use gpdisc::field::Wavefunction2D;
use gpdisc::params::PhysicalParams;
use gpdisc::vortex::VortexSet;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// One experiment's outcome: configuration echo, scalar outputs, artifact
/// paths and bookkeeping. Every referenced artifact exists on success.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub mode: String,
    pub config: Value,
    pub scalars: BTreeMap<String, f64>,
    pub artifacts: Vec<String>,
    pub wall_ms: u64,
    pub iterations: u64,
    pub warnings: Vec<String>,
}

impl ResultRecord {
    pub fn new(mode: &str, config: Value) -> Self {
        Self {
            mode: mode.to_string(),
            config,
            scalars: BTreeMap::new(),
            artifacts: Vec::new(),
            wall_ms: 0,
            iterations: 0,
            warnings: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: f64) {
        self.scalars.insert(key.to_string(), value);
    }
}

pub fn io_err(path: &Path, e: std::io::Error) -> gpdisc::Error {
    gpdisc::Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub struct Emitter {
    pub dir: PathBuf,
    pub formats: Vec<String>,
}

impl Emitter {
    pub fn new(dir: &str, formats: &[String]) -> Result<Self, gpdisc::Error> {
        let dir = PathBuf::from(dir);
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(Self {
            dir,
            formats: formats.to_vec(),
        })
    }

    pub fn wants(&self, fmt: &str) -> bool {
        self.formats.iter().any(|f| f == fmt)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn write_text(&self, name: &str, body: &str) -> Result<String, gpdisc::Error> {
        let path = self.path(name);
        fs::write(&path, body).map_err(|e| io_err(&path, e))?;
        Ok(path.display().to_string())
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<String, gpdisc::Error> {
        let body = serde_json::to_string_pretty(value).expect("serializable");
        self.write_text(name, &body)
    }

    /// CSV with a header row; each row must match the header arity.
    pub fn write_csv(
        &self,
        name: &str,
        header: &[&str],
        rows: &[Vec<f64>],
    ) -> Result<String, gpdisc::Error> {
        let mut body = header.join(",");
        body.push('\n');
        for row in rows {
            debug_assert_eq!(row.len(), header.len());
            let line: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
            body.push_str(&line.join(","));
            body.push('\n');
        }
        self.write_text(name, &body)
    }

    pub fn write_field(
        &self,
        name: &str,
        psi: &Wavefunction2D,
        params: &PhysicalParams,
    ) -> Result<String, gpdisc::Error> {
        let path = self.path(name);
        let file = fs::File::create(&path).map_err(|e| io_err(&path, e))?;
        let mut w = std::io::BufWriter::new(file);
        psi.write_binary(params, &mut w).map_err(|e| io_err(&path, e))?;
        w.flush().map_err(|e| io_err(&path, e))?;
        Ok(path.display().to_string())
    }

    /// `|psi|^2` on the polar grid as CSV rows `(r, theta, density)`.
    pub fn write_density_csv(
        &self,
        name: &str,
        psi: &Wavefunction2D,
    ) -> Result<String, gpdisc::Error> {
        let mut rows = Vec::with_capacity(psi.values.len());
        for i in 0..psi.n_r() {
            let r = psi.grid.nodes()[i];
            for j in 0..psi.n_theta {
                rows.push(vec![r, psi.theta(j), psi.at(i, j).norm_sqr()]);
            }
        }
        self.write_csv(name, &["r", "theta", "density"], &rows)
    }

    pub fn write_vortex_csv(&self, name: &str, set: &VortexSet) -> Result<String, gpdisc::Error> {
        let rows: Vec<Vec<f64>> = set
            .items
            .iter()
            .map(|v| vec![v.r, v.theta, v.degree as f64, v.core_scale])
            .collect();
        self.write_csv(name, &["r", "theta", "degree", "core_scale"], &rows)
    }

    /// Line plot of `(x, y)` series.
    pub fn write_svg_line(
        &self,
        name: &str,
        title: &str,
        series: &[(&str, &[(f64, f64)])],
    ) -> Result<String, gpdisc::Error> {
        let body = svg_line_plot(title, series);
        self.write_text(name, &body)
    }

    /// Scatter of vortices over the unit disc.
    pub fn write_svg_vortices(
        &self,
        name: &str,
        title: &str,
        set: &VortexSet,
    ) -> Result<String, gpdisc::Error> {
        let body = svg_vortex_plot(title, set);
        self.write_text(name, &body)
    }
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN: f64 = 56.0;

fn svg_header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <text x=\"{0}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">{title}</text>\n",
        W / 2.0
    )
}

fn svg_line_plot(title: &str, series: &[(&str, &[(f64, f64)])]) -> String {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for (_, pts) in series {
        for &(x, y) in *pts {
            if x.is_finite() && y.is_finite() {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0).max(1e-300) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0).max(1e-300) * (H - 2.0 * MARGIN);
    let mut out = svg_header(title);
    out.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{m}\" y=\"{lab}\" font-family=\"sans-serif\" font-size=\"11\">{x0:.4}</text>\n\
         <text x=\"{r}\" y=\"{lab}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{x1:.4}</text>\n\
         <text x=\"6\" y=\"{b}\" font-family=\"sans-serif\" font-size=\"11\">{y0:.4}</text>\n\
         <text x=\"6\" y=\"{t}\" font-family=\"sans-serif\" font-size=\"11\">{y1:.4}</text>\n",
        m = MARGIN,
        b = H - MARGIN,
        t = MARGIN,
        r = W - MARGIN,
        lab = H - MARGIN + 18.0,
    ));
    let colors = ["#1f6fb2", "#c23b22", "#2c8a4b", "#7a4fa0", "#a0763c"];
    for (k, (label, pts)) in series.iter().enumerate() {
        let color = colors[k % colors.len()];
        let path: Vec<String> = pts
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        if !path.is_empty() {
            out.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\"/>\n",
                path.join(" ")
            ));
            for p in pts.iter() {
                out.push_str(&format!(
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.4\" fill=\"{color}\"/>\n",
                    sx(p.0),
                    sy(p.1)
                ));
            }
        }
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{color}\">{label}</text>\n",
            W - MARGIN + 4.0 - 120.0,
            MARGIN + 16.0 * (k as f64 + 1.0)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn svg_vortex_plot(title: &str, set: &VortexSet) -> String {
    let cx = W / 2.0;
    let cy = H / 2.0 + 10.0;
    let scale = (H / 2.0 - MARGIN).min(W / 2.0 - MARGIN);
    let mut out = svg_header(title);
    out.push_str(&format!(
        "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{scale}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    for v in &set.items {
        let x = cx + scale * v.r * v.theta.cos();
        let y = cy - scale * v.r * v.theta.sin();
        let color = if v.degree > 0 { "#c23b22" } else { "#1f6fb2" };
        let r_dot = 3.0 + 1.5 * (v.degree.unsigned_abs() as f64 - 1.0).min(4.0);
        out.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r_dot:.1}\" fill=\"{color}\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in v {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}
