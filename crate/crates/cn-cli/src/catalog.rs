//! JSON-lines catalog records: one self-describing record per derived
//! congruent number, embedding the certificate when one exists. All big
//! integers are decimal strings and rationals are `p/q` in lowest terms, so
//! records are bit-exact and parser-agnostic.

use std::collections::BTreeMap;

use congruent::pipeline::CongruentCertificate;
use serde::{Deserialize, Serialize};

/// One catalog line. `status` is `certified`, `discrepancy-flagged`,
/// `degenerate`, `unsolvable`, or `not-admissible`; a certificate is present
/// exactly for the first two.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    pub method: String,
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CongruentCertificate>,
    pub status: String,
}

impl CatalogRecord {
    pub fn certified(
        method: &str,
        params: BTreeMap<String, String>,
        certificate: CongruentCertificate,
    ) -> Self {
        CatalogRecord {
            n: Some(certificate.n.to_string()),
            method: method.to_string(),
            params,
            certificate: Some(certificate),
            status: "certified".to_string(),
        }
    }

    pub fn flagged(
        method: &str,
        params: BTreeMap<String, String>,
        certificate: CongruentCertificate,
    ) -> Self {
        CatalogRecord {
            n: Some(certificate.n.to_string()),
            method: method.to_string(),
            params,
            certificate: Some(certificate),
            status: "discrepancy-flagged".to_string(),
        }
    }

    pub fn without_certificate(
        method: &str,
        params: BTreeMap<String, String>,
        status: &str,
    ) -> Self {
        CatalogRecord {
            n: None,
            method: method.to_string(),
            params,
            certificate: None,
            status: status.to_string(),
        }
    }
}

/// A line of a verifiable file: either a full record or a bare certificate.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum VerifyLine {
    Record(CatalogRecord),
    Certificate(CongruentCertificate),
}
