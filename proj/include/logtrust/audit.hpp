/// @file audit.hpp
/// @brief Local trust assessment: scanning logs for obligation violations.

#pragma once

#include <logtrust/document.hpp>
#include <logtrust/trust.hpp>

#include <optional>
#include <string>
#include <vector>

namespace logtrust {

/// How a performed action is matched against obligations.
enum class AlgorithmMode : std::uint8_t {
    /// The latest obligation strictly before the action governs; a later
    /// permit overrides an earlier forbid.
    prose,
    /// Backward scan that flags the action if any forbid precedes it, even
    /// when a later permit exists.
    literal,
};

std::string_view to_string(AlgorithmMode mode) noexcept;
std::optional<AlgorithmMode> parse_mode(std::string_view text) noexcept;

struct AuditOptions {
    AlgorithmMode mode = AlgorithmMode::prose;
    /// Carry-forward seed. When empty every appearing peer starts at max.
    std::optional<TrustTable> prior;
};

struct AuditReport {
    PeerId assessor;
    std::string doc_id;
    std::vector<Violation> violations;
    TrustTable trust;

    bool operator==(const AuditReport&) const = default;
};

/// Violations in both logs, ordered by (offender, action_clock, verb).
///
/// The document creator is never checked. Throws UnknownCreator when the
/// edit log has no create event and CreatorMismatch when it names someone
/// other than `doc.creator`.
std::vector<Violation> detect_violations(const Log& edit_log, const Log& comm_log,
                                         const Document& doc,
                                         AlgorithmMode mode = AlgorithmMode::prose);

/// Detects violations, then builds the trust table: every peer mentioned in
/// either log starts at the model maximum (or its prior value) and loses one
/// on_violation step per violation.
AuditReport local_trust_assessment(const Log& edit_log, const Log& comm_log, const Document& doc,
                                   const PeerId& assessor, const TrustModel& model,
                                   const AuditOptions& options = {});

/// The creator recorded by the edit log's create event.
PeerId creator_from_log(const Log& edit_log);

}  // namespace logtrust
