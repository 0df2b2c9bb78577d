use std::fmt::Write;

use crate::opalg::poly::Named;
use crate::opalg::Poly;
use crate::spin::SparseMatrix;

const NAMES: [&str; 4] = ["d1", "d2", "d3", "d4"];
const MAX_RENDER: usize = 4000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Unverified(String),
}

impl Status {
    pub fn label(&self) -> String {
        match self {
            Status::Pass => "pass".into(),
            Status::Fail => "fail".into(),
            Status::Unverified(why) => format!("unverified: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportEntry {
    pub label: String,
    pub status: Status,
    pub defect: Option<String>,
}

/// Per-coefficient outcomes of one relation.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub name: String,
    pub entries: Vec<ReportEntry>,
    /// Coefficients not representable within the truncation order.
    pub beyond_cutoff: usize,
}

impl RelationReport {
    pub fn new(name: impl Into<String>) -> Self {
        RelationReport { name: name.into(), entries: Vec::new(), beyond_cutoff: 0 }
    }

    /// Records LHS − RHS; passes iff it is zero.
    pub fn record(&mut self, label: impl Into<String>, defect: &SparseMatrix<Poly>) {
        let status = if defect.is_zero() { Status::Pass } else { Status::Fail };
        let defect = (!defect.is_zero()).then(|| render_matrix(defect));
        self.entries.push(ReportEntry { label: label.into(), status, defect });
    }

    pub fn record_bool(&mut self, label: impl Into<String>, ok: bool, defect: Option<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.entries.push(ReportEntry { label: label.into(), status, defect: if ok { None } else { defect } });
    }

    pub fn record_unverified(&mut self, label: impl Into<String>, why: impl Into<String>) {
        self.entries.push(ReportEntry { label: label.into(), status: Status::Unverified(why.into()), defect: None });
    }

    pub fn extend(&mut self, other: RelationReport) {
        self.beyond_cutoff += other.beyond_cutoff;
        let prefix = other.name;
        self.entries.extend(other.entries.into_iter().map(|mut e| {
            e.label = format!("{prefix}: {}", e.label);
            e
        }));
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn count(&self, status: &Status) -> usize {
        self.entries.iter().filter(|e| &e.status == status).count()
    }

    pub fn unverified(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.status, Status::Unverified(_))).count()
    }

    /// Pass, fail or the first unverified reason.
    pub fn status(&self) -> Status {
        if self.failures().next().is_some() {
            return Status::Fail;
        }
        self.entries
            .iter()
            .find(|e| matches!(e.status, Status::Unverified(_)))
            .map_or(Status::Pass, |e| e.status.clone())
    }

    /// The first failing defect with its label.
    pub fn first_defect(&self) -> Option<String> {
        self.failures().next().map(|e| format!("{}: {}", e.label, e.defect.as_deref().unwrap_or("")))
    }
}

/// Matrix of polynomials in d1, d2, … with entries listed row-major.
pub fn render_matrix(m: &SparseMatrix<Poly>) -> String {
    let mut s = String::new();
    for (k, (r, c, p)) in m.entries().enumerate() {
        if k > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "[{r},{c}] {}", Named(p, &NAMES));
        if s.len() > MAX_RENDER {
            let _ = write!(s, ", … ({} entries)", m.nnz());
            break;
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
