//! Run configuration: defaults, then an optional config file, then an optional
//! caps file, then command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use diagideal::grid::parse_windows;
use diagideal::{
    Caps, Characteristic, Error, Execution, GridShape, Options, Result, Window, WindowChain,
};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Mirror of [`RunConfig`] as read from a TOML file; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub window: Option<String>,
    pub chain: Option<String>,
    pub char: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub exec: Option<Execution>,
    pub force_brute: Option<bool>,
    pub caps: Option<Caps>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

pub fn load_caps(path: &Path) -> Result<Caps> {
    let text = read(path)?;
    toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

/// Values supplied on the command line; `None` leaves the file value alone.
#[derive(Debug, Default)]
pub struct Overrides {
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub window: Option<String>,
    pub chain: Option<String>,
    pub char: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub exec: Option<Execution>,
    pub force_brute: bool,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub shape: Option<GridShape>,
    /// Windows in the given order; sorted unless `force_brute` is set.
    pub windows: Option<Vec<Window>>,
    pub char: Characteristic,
    pub opts: Options,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub force_brute: bool,
}

impl RunConfig {
    pub fn resolve(
        file: ConfigFile,
        caps_file: Option<Caps>,
        cli: Overrides,
        default_char: Characteristic,
    ) -> Result<Self> {
        let rows = cli.rows.or(file.rows);
        let cols = cli.cols.or(file.cols);
        let shape = match (rows, cols) {
            (Some(m), Some(n)) => Some(GridShape::new(m, n)?),
            (None, None) => None,
            _ => return Err(Error::Parse("--rows and --cols go together".into())),
        };
        let force_brute = cli.force_brute || file.force_brute.unwrap_or(false);
        let (window, chain) = if cli.window.is_some() || cli.chain.is_some() {
            (cli.window, cli.chain)
        } else {
            (file.window, file.chain)
        };
        let spec = match (window, chain) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "give either --window or --chain, not both".into(),
                ))
            }
            (Some(w), None) => Some(w),
            (None, c) => c,
        };
        let windows = match spec {
            None => None,
            Some(text) => {
                let shape =
                    shape.ok_or_else(|| Error::Parse("windows need --rows and --cols".into()))?;
                let ws = parse_windows(shape, &text)?;
                if !force_brute {
                    WindowChain::new(ws.clone())?;
                }
                Some(ws)
            }
        };
        let char = match cli.char.or(file.char) {
            Some(p) => Characteristic::new(p)?,
            None => default_char,
        };
        let caps = caps_file.or(file.caps).unwrap_or_default();
        let exec = cli.exec.or(file.exec).unwrap_or_default();
        Ok(RunConfig {
            shape,
            windows,
            char,
            opts: Options { caps, exec },
            format: cli.format.or(file.format).unwrap_or_default(),
            output: cli.output.or(file.output),
            seed: cli.seed.or(file.seed).unwrap_or(0),
            force_brute,
        })
    }

    pub fn shape(&self) -> Result<GridShape> {
        self.shape
            .ok_or_else(|| Error::Parse("this command needs --rows and --cols".into()))
    }

    pub fn windows(&self) -> Result<&[Window]> {
        self.windows
            .as_deref()
            .ok_or_else(|| Error::Parse("this command needs --window or --chain".into()))
    }

    /// The windows as a validated sorted chain.
    pub fn chain(&self) -> Result<WindowChain> {
        WindowChain::new(self.windows()?.to_vec())
    }

    pub fn single_window(&self) -> Result<Window> {
        match self.windows()? {
            [w] => Ok(*w),
            ws => Err(Error::Parse(format!(
                "expected one window, got {}",
                ws.len()
            ))),
        }
    }
}
