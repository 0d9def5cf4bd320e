use std::io::Read;
use std::path::Path;

use serde_json::Value;

use crate::Failure;

pub fn load(path: &Path) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Operands drawn from an optional combined document, with per-operand files
/// taking precedence.
pub struct Sources {
    doc: Option<Value>,
}

impl Sources {
    pub fn new(input: Option<&Path>) -> Result<Self, Failure> {
        let doc = input.map(load).transpose()?;
        if let Some(d) = &doc {
            if !d.is_object() {
                return Err(Failure::Input("input document must be a JSON object".into()));
            }
        }
        Ok(Self { doc })
    }

    pub fn document(&self) -> Option<&Value> {
        self.doc.as_ref()
    }

    pub fn optional(&self, name: &str, file: Option<&Path>) -> Result<Option<Value>, Failure> {
        match file {
            Some(p) => load(p).map(Some),
            None => Ok(self.doc.as_ref().and_then(|d| d.get(name)).cloned()),
        }
    }

    pub fn required(&self, name: &str, file: Option<&Path>) -> Result<Value, Failure> {
        self.optional(name, file)?
            .ok_or_else(|| Failure::Input(format!("missing operand \"{name}\" (use --{name} or --input)")))
    }
}
