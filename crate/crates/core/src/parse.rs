//! Reader for the `.cf` dataset format.
//!
//! ```text
//! # comment
//! ground: x y z
//! x y z -> x
//! x y -> y
//! x z -> z
//! y z -> y
//! ```
//!
//! Every menu with at least two items must appear exactly once; singletons
//! are implied.

use std::collections::HashMap;

use crate::domain::{ChoiceFunction, GroundSet, Menu, MAX_GROUND};
use crate::error::{Error, Result};

pub fn parse_dataset(text: &str) -> Result<ChoiceFunction> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, strip_comment(raw).trim()))
        .filter(|(_, line)| !line.is_empty());

    let (ground_line, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "expected `ground: <label> ...`".into(),
    })?;
    let ground = parse_ground(ground_line, header)?;

    let mut choices: HashMap<Menu, usize> = HashMap::new();
    for (line, content) in lines {
        let (menu, chosen) = parse_menu_line(&ground, line, content)?;
        if choices.insert(menu, chosen).is_some() {
            return Err(Error::DuplicateMenu {
                line,
                menu: ground.format_menu(menu),
            });
        }
    }

    if let Some(missing) = ground
        .menus()
        .find(|m| m.len() >= 2 && !choices.contains_key(m))
    {
        return Err(Error::MissingMenu(ground.format_menu(missing)));
    }

    ChoiceFunction::from_fn(ground, |m| {
        if m.len() == 1 {
            m.first().expect("singleton")
        } else {
            choices[&m]
        }
    })
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

fn parse_ground(line: usize, content: &str) -> Result<std::sync::Arc<GroundSet>> {
    let rest = content
        .strip_prefix("ground:")
        .ok_or_else(|| Error::Parse {
            line,
            message: "expected `ground: <label> ...` as the first line".into(),
        })?;
    let labels: Vec<&str> = rest.split_whitespace().collect();
    if labels.len() > MAX_GROUND {
        return Err(Error::GroundTooLarge(labels.len()));
    }
    GroundSet::new(labels.iter().copied()).map_err(|e| match e {
        Error::InvalidGround(message) => Error::Parse { line, message },
        other => other,
    })
}

fn parse_menu_line(ground: &GroundSet, line: usize, content: &str) -> Result<(Menu, usize)> {
    let parse_err = |message: String| Error::Parse { line, message };

    if content.starts_with("ground:") {
        return Err(parse_err("`ground:` may appear only once".into()));
    }
    let (lhs, rhs) = content
        .split_once("->")
        .ok_or_else(|| parse_err("expected `<labels> -> <label>`".into()))?;
    if rhs.contains("->") {
        return Err(parse_err("more than one `->`".into()));
    }

    let mut menu = Menu::EMPTY;
    for token in lhs.split_whitespace() {
        let item = ground
            .index_of(token)
            .ok_or_else(|| parse_err(format!("unknown label {token:?}")))?;
        if menu.contains(item) {
            return Err(parse_err(format!("label {token:?} repeated in menu")));
        }
        menu = menu.with(item);
    }
    if menu.len() < 2 {
        return Err(parse_err(
            "menus must list at least two labels (singletons are implied)".into(),
        ));
    }

    let rhs_tokens: Vec<&str> = rhs.split_whitespace().collect();
    let [chosen_label] = rhs_tokens.as_slice() else {
        return Err(parse_err(
            "expected exactly one chosen label after `->`".into(),
        ));
    };
    let chosen = ground
        .index_of(chosen_label)
        .ok_or_else(|| parse_err(format!("unknown label {chosen_label:?}")))?;
    if !menu.contains(chosen) {
        return Err(Error::ChoiceOutsideMenu {
            line,
            menu: ground.format_menu(menu),
            choice: (*chosen_label).to_string(),
        });
    }
    Ok((menu, chosen))
}

/// Reads and parses a `.cf` file.
pub fn load_dataset(path: impl AsRef<std::path::Path>) -> Result<ChoiceFunction> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_dataset(&text)
}
