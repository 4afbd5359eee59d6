//! On-disk cache: immutable content-addressed records plus one small index file per key.
//!
//! Layout under the cache root:
//! `records/<sha256>.json` holds `{"key", "version", "body"}`;
//! `index/<key>` holds the hash of the current record for that key.
//! Both are written to a temporary file in the same directory and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::arith::Rational;
use crate::certificate::Certificate;
use crate::giambelli::{pk_beta, pk_full, PkRecord, PkVariant};
use crate::poly::{QPoly, TermJson};
use crate::{Error, Result, TOOL_VERSION};

pub const CACHE_ENV: &str = "HECKE_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".hecke-cache";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Envelope {
    key: String,
    version: String,
    body: Value,
}

/// Hex SHA-256 of the exact bytes.
pub fn content_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash under which a certificate is (or would be) stored.
pub fn certificate_ref(cert: &Certificate) -> String {
    content_hash(&encode_envelope(&certificate_key(cert), cert_body(cert)))
}

fn cert_body(cert: &Certificate) -> Value {
    serde_json::to_value(cert).expect("certificate serializes")
}

fn encode_envelope(key: &str, body: Value) -> Vec<u8> {
    let env = Envelope {
        key: key.to_string(),
        version: TOOL_VERSION.to_string(),
        body,
    };
    let mut bytes = serde_json::to_vec_pretty(&env).expect("envelope serializes");
    bytes.push(b'\n');
    bytes
}

pub fn certificate_key(cert: &Certificate) -> String {
    let tag = match cert {
        Certificate::Modular(_) => "mod",
        Certificate::Rational(_) => "rat",
    };
    format!("cert-{tag}-k{}-g{}", cert.k(), cert.g0())
}

pub fn pk_key(k: u32, variant: PkVariant) -> String {
    format!("pk-{k}-{variant}")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PkJson {
    k: u32,
    variant: PkVariant,
    algorithm: String,
    version: String,
    poly: Vec<TermJson>,
}

#[derive(Debug, Clone)]
pub struct Store {
    root: PathBuf,
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        for sub in ["records", "index"] {
            let dir = root.join(sub);
            fs::create_dir_all(&dir).map_err(|source| Error::Io { path: dir, source })?;
        }
        Ok(Store { root })
    }

    /// `$HECKE_CACHE_DIR`, or `./.hecke-cache` when unset.
    pub fn from_env() -> Result<Self> {
        let root = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Store::open(root)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn record_path(&self, hash: &str) -> PathBuf {
        self.root.join("records").join(format!("{hash}.json"))
    }

    fn index_path(&self, key: &str) -> Result<PathBuf> {
        let ok = !key.is_empty()
            && key
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
        if !ok {
            return Err(Error::InvalidArgument(format!("bad cache key {key:?}")));
        }
        Ok(self.root.join("index").join(key))
    }

    /// Writes `body` under `key` and returns its content hash.
    pub fn put(&self, key: &str, body: Value) -> Result<String> {
        let index = self.index_path(key)?;
        let bytes = encode_envelope(key, body);
        let hash = content_hash(&bytes);
        let record = self.record_path(&hash);
        if !record.exists() {
            atomic_write(&record, &bytes)?;
        }
        atomic_write(&index, format!("{hash}\n").as_bytes())?;
        Ok(hash)
    }

    /// The body stored under `key`, if present, intact, and written by this tool version.
    pub fn get(&self, key: &str) -> Result<Option<(String, Value)>> {
        let index = self.index_path(key)?;
        let hash = match fs::read_to_string(&index) {
            Ok(s) => s.trim().to_string(),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => {
                return Err(Error::Io {
                    path: index,
                    source,
                })
            }
        };
        let path = self.record_path(&hash);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(Error::Io { path, source }),
        };
        if content_hash(&bytes) != hash {
            return Ok(None);
        }
        let env: Envelope =
            serde_json::from_slice(&bytes).map_err(|source| Error::Json { path, source })?;
        if env.version != TOOL_VERSION || env.key != key {
            return Ok(None);
        }
        Ok(Some((hash, env.body)))
    }

    /// Raw record bytes by hash, for audit.
    pub fn read_record(&self, hash: &str) -> Result<Vec<u8>> {
        let path = self.record_path(hash);
        fs::read(&path).map_err(|source| Error::Io { path, source })
    }

    pub fn put_certificate(&self, cert: &Certificate) -> Result<String> {
        self.put(&certificate_key(cert), cert_body(cert))
    }

    pub fn get_certificate(&self, key: &str) -> Result<Option<(String, Certificate)>> {
        match self.get(key)? {
            None => Ok(None),
            Some((hash, body)) => match serde_json::from_value::<Certificate>(body) {
                Ok(c) if c.self_check().is_ok() => Ok(Some((hash, c))),
                _ => Ok(None),
            },
        }
    }

    pub fn put_pk(&self, rec: &PkRecord<Rational>) -> Result<String> {
        let body = PkJson {
            k: rec.k,
            variant: rec.variant,
            algorithm: rec.algorithm.clone(),
            version: rec.version.clone(),
            poly: rec.poly.to_canonical(),
        };
        self.put(
            &pk_key(rec.k, rec.variant),
            serde_json::to_value(body).expect("record serializes"),
        )
    }

    pub fn get_pk(&self, k: u32, variant: PkVariant) -> Result<Option<PkRecord<Rational>>> {
        let Some((_, body)) = self.get(&pk_key(k, variant))? else {
            return Ok(None);
        };
        let Ok(rec) = serde_json::from_value::<PkJson>(body) else {
            return Ok(None);
        };
        if rec.version != TOOL_VERSION || rec.k != k || rec.variant != variant {
            return Ok(None);
        }
        let poly = QPoly::from_canonical((), &rec.poly)?;
        Ok(Some(PkRecord {
            k,
            variant,
            poly,
            algorithm: rec.algorithm,
            version: rec.version,
        }))
    }

    /// Cached `P_k` over the rationals, computing and storing it on a miss.
    pub fn pk(&self, k: u32, variant: PkVariant) -> Result<PkRecord<Rational>> {
        if let Some(rec) = self.get_pk(k, variant)? {
            return Ok(rec);
        }
        let rec = match variant {
            PkVariant::Full => pk_full(k),
            PkVariant::Beta => pk_beta(k),
            PkVariant::Hat(_) => {
                return Err(Error::InvalidArgument(
                    "prime-field records are not cached".into(),
                ))
            }
        };
        self.put_pk(&rec)?;
        Ok(rec)
    }
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().expect("cache paths have a parent");
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcert::certify_mod;

    #[test]
    fn pk_round_trip_and_version_check() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        assert!(store.get_pk(3, PkVariant::Beta).unwrap().is_none());
        let rec = store.pk(3, PkVariant::Beta).unwrap();
        let again = store.get_pk(3, PkVariant::Beta).unwrap().unwrap();
        assert_eq!(rec, again);

        // a record from another tool version is ignored
        let stale = serde_json::json!({"k": 3, "variant": "beta", "algorithm": "x",
            "version": "hecke-core 0.0.0", "poly": []});
        let index = store.index_path(&pk_key(3, PkVariant::Beta)).unwrap();
        let bytes = serde_json::to_vec_pretty(&Envelope {
            key: pk_key(3, PkVariant::Beta),
            version: "hecke-core 0.0.0".into(),
            body: stale,
        })
        .unwrap();
        let hash = content_hash(&bytes);
        atomic_write(&store.record_path(&hash), &bytes).unwrap();
        atomic_write(&index, hash.as_bytes()).unwrap();
        assert!(store.get_pk(3, PkVariant::Beta).unwrap().is_none());
        assert_eq!(store.pk(3, PkVariant::Beta).unwrap(), rec);
    }

    #[test]
    fn certificates_are_content_addressed() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let cert = Certificate::Modular(certify_mod(3, Some(11)).unwrap().unwrap());
        let h1 = store.put_certificate(&cert).unwrap();
        let h2 = store.put_certificate(&cert).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(h1, certificate_ref(&cert));
        let (h, back) = store.get_certificate("cert-mod-k3-g11").unwrap().unwrap();
        assert_eq!((h, back), (h1.clone(), cert));
        assert_eq!(content_hash(&store.read_record(&h1).unwrap()), h1);
        assert!(store.get("../escape").is_err());
    }

    #[test]
    fn corrupted_record_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let hash = store.put("sample", serde_json::json!({"x": 1})).unwrap();
        fs::write(store.record_path(&hash), b"{}").unwrap();
        assert!(store.get("sample").unwrap().is_none());
    }
}
