//! Diagnostics shared by the parser and the structural validator.

use std::fmt;

/// A 1-based line/column position in a `.tm` source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl Pos {
    pub fn new(line: u32, column: u32) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// The closed set of diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagCode {
    /// Lexical or grammatical error.
    Syntax,
    /// An identifier declared twice in the same namespace.
    DuplicateId,
    /// A reference to an undeclared thimac, action, region, atom or event.
    Unresolved,
    /// A region declared with no nodes.
    EmptyRegion,
    /// A thimac without a create action.
    NoCreate,
    /// A flow crossing a thimac boundary that is not transfer to transfer.
    IllegalBoundaryFlow,
    /// A link inside an in-memory model that points at nothing.
    DanglingRef,
    /// Thimac parent links that loop.
    CyclicNesting,
    /// An implication below the top level of a constraint.
    NestedImplication,
    /// A malformed chronology statement (e.g. a one-branch alternative).
    Chronology,
    /// The same arc declared twice.
    DuplicateArc,
}

impl DiagCode {
    pub const ALL: [DiagCode; 11] = [
        DiagCode::Syntax,
        DiagCode::DuplicateId,
        DiagCode::Unresolved,
        DiagCode::EmptyRegion,
        DiagCode::NoCreate,
        DiagCode::IllegalBoundaryFlow,
        DiagCode::DanglingRef,
        DiagCode::CyclicNesting,
        DiagCode::NestedImplication,
        DiagCode::Chronology,
        DiagCode::DuplicateArc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::Syntax => "E_SYNTAX",
            DiagCode::DuplicateId => "E_DUPLICATE_ID",
            DiagCode::Unresolved => "E_UNRESOLVED",
            DiagCode::EmptyRegion => "E_EMPTY_REGION",
            DiagCode::NoCreate => "E_NO_CREATE",
            DiagCode::IllegalBoundaryFlow => "E_ILLEGAL_BOUNDARY_FLOW",
            DiagCode::DanglingRef => "E_DANGLING_REF",
            DiagCode::CyclicNesting => "E_CYCLIC_NESTING",
            DiagCode::NestedImplication => "E_NESTED_IMPLICATION",
            DiagCode::Chronology => "E_CHRONOLOGY",
            DiagCode::DuplicateArc => "W_DUPLICATE_ARC",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            DiagCode::DuplicateArc => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a structural diagnostic is about. The parser maps subjects back to
/// source positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Thimac(String),
    Action(String),
    Flow { from: String, to: String },
    Trigger { from: String, to: String },
    Region(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub severity: Severity,
    pub message: String,
    pub pos: Option<Pos>,
    pub subject: Option<Subject>,
}

impl Diagnostic {
    pub fn new(code: DiagCode, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            severity: code.severity(),
            message: message.into(),
            pos: None,
            subject: None,
        }
    }

    pub fn at(mut self, pos: Pos) -> Self {
        self.pos = Some(pos);
        self
    }

    pub fn about(mut self, subject: Subject) -> Self {
        self.subject = Some(subject);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(pos) = self.pos {
            write!(f, "{pos}: ")?;
        }
        write!(f, "{}[{}]: {}", self.severity, self.code, self.message)
    }
}

impl std::error::Error for Diagnostic {}
