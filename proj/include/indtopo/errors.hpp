#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace indtopo {

enum class ErrorKind {
    UnknownVertex,
    MissingEdge,
    EdgeAlreadyPresent,
    OpenEdgeNeighborhoodUnsupported,
    TooLargeForExactSearch,
    FaceBudgetExceeded,
    MatrixBudgetExceeded,
    UnresolvedOpaque,
    NonNormalizable,
    IndexOutOfRange,
    BaseCaseNotWedgeOfSpheres,
    SyntaxError,
    CertificateInvalid,
    EdgeConflict,
    NTooSmall,
    MismatchReported,
    ParseError,
    IoError,
    InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::MissingEdge: return "MissingEdge";
    case ErrorKind::EdgeAlreadyPresent: return "EdgeAlreadyPresent";
    case ErrorKind::OpenEdgeNeighborhoodUnsupported: return "OpenEdgeNeighborhoodUnsupported";
    case ErrorKind::TooLargeForExactSearch: return "TooLargeForExactSearch";
    case ErrorKind::FaceBudgetExceeded: return "FaceBudgetExceeded";
    case ErrorKind::MatrixBudgetExceeded: return "MatrixBudgetExceeded";
    case ErrorKind::UnresolvedOpaque: return "UnresolvedOpaque";
    case ErrorKind::NonNormalizable: return "NonNormalizable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BaseCaseNotWedgeOfSpheres: return "BaseCaseNotWedgeOfSpheres";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::EdgeConflict: return "EdgeConflict";
    case ErrorKind::NTooSmall: return "NTooSmall";
    case ErrorKind::MismatchReported: return "MismatchReported";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_budget() const noexcept {
        return kind_ == ErrorKind::FaceBudgetExceeded || kind_ == ErrorKind::MatrixBudgetExceeded ||
               kind_ == ErrorKind::TooLargeForExactSearch;
    }

private:
    ErrorKind kind_;
};

/// Script and syntax errors point at a location: an op index for scripts,
/// line/column for the parser.
class LocatedError : public Error {
public:
    LocatedError(ErrorKind kind, const std::string& what, std::size_t index, std::size_t line = 0,
                 std::size_t column = 0)
        : Error(kind, what), index_(index), line_(line), column_(column) {}

    std::size_t index() const noexcept { return index_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t index_;
    std::size_t line_;
    std::size_t column_;
};

/// Integer extended by a top element +infinity; infinity absorbs addition.
class ExtInt {
public:
    constexpr ExtInt() = default;
    constexpr ExtInt(std::int64_t v) : value_(v) {}  // NOLINT: implicit by intent

    static constexpr ExtInt infinity() {
        ExtInt x;
        x.infinite_ = true;
        return x;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr std::int64_t value() const {
        return infinite_ ? std::numeric_limits<std::int64_t>::max() : value_;
    }

    friend constexpr ExtInt operator+(ExtInt a, std::int64_t k) {
        return a.infinite_ ? a : ExtInt(a.value_ + k);
    }
    friend constexpr bool operator==(ExtInt a, ExtInt b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr bool operator<(ExtInt a, ExtInt b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend constexpr bool operator>(ExtInt a, ExtInt b) { return b < a; }
    friend constexpr bool operator<=(ExtInt a, ExtInt b) { return !(b < a); }
    friend constexpr bool operator>=(ExtInt a, ExtInt b) { return !(a < b); }

    std::string str() const { return infinite_ ? std::string("inf") : std::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, ExtInt x) { return os << x.str(); }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

inline ExtInt min(ExtInt a, ExtInt b) { return b < a ? b : a; }
inline ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }

}  // namespace indtopo
