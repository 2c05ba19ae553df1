/// @file obligation.hpp
/// @brief Obligation ordering plus the effective-obligation query.

#pragma once

#include <logtrust/log.hpp>

#include <optional>
#include <span>
#include <vector>

namespace logtrust {

/// A verb together with its polarity: (comment, false) reads "not comment".
struct ObligationAtom {
    Verb verb;
    bool allow;

    auto operator<=>(const ObligationAtom&) const = default;
};

enum class Ordering : std::uint8_t { greater, less, equal, incomparable };

std::string_view to_string(Ordering o) noexcept;

/// Compares two atoms by the ability they grant.
///
/// Permits form a ladder share > comment > delete_comment > read, every permit
/// outranks every deny, and denies of different verbs are incomparable.
/// Create is outside the ladder and only equal to itself.
Ordering compare_atoms(const ObligationAtom& a, const ObligationAtom& b) noexcept;

/// Throws InternallyConflictingSet if a verb appears with both polarities.
void validate_atom_set(std::span<const ObligationAtom> atoms);

/// Set comparison over the verbs both sets mention. Greater when every shared
/// verb is at least as permissive in `a` and one is strictly more; Equal only
/// for identical sets.
Ordering compare_sets(std::span<const ObligationAtom> a, std::span<const ObligationAtom> b);

struct AtomConflict {
    Verb verb;
    ObligationAtom from_a;
    ObligationAtom from_b;

    bool operator==(const AtomConflict&) const = default;
};

/// Every verb on which `a` and `b` carry opposite polarities, ordered by verb.
std::vector<AtomConflict> detect_conflicts(std::span<const ObligationAtom> a,
                                           std::span<const ObligationAtom> b);

/// Picks the surviving atom among same-verb, same-clock competitors.
/// Deny wins. Throws EmptyInput.
ObligationAtom resolve(std::span<const ObligationAtom> conflicting);

/// The obligation event an effective status derives from.
struct ObligationSource {
    OriginKey origin;
    Clock clock;

    auto operator<=>(const ObligationSource&) const = default;
};

class ObligationStatus {
public:
    enum class Kind : std::uint8_t { permit, forbid, unspecified };

    static ObligationStatus unspecified() { return ObligationStatus(Kind::unspecified, std::nullopt); }
    static ObligationStatus permit(ObligationSource s) { return ObligationStatus(Kind::permit, std::move(s)); }
    static ObligationStatus forbid(ObligationSource s) { return ObligationStatus(Kind::forbid, std::move(s)); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_forbid() const noexcept { return kind_ == Kind::forbid; }
    [[nodiscard]] bool is_permit() const noexcept { return kind_ == Kind::permit; }
    [[nodiscard]] bool is_unspecified() const noexcept { return kind_ == Kind::unspecified; }
    [[nodiscard]] const std::optional<ObligationSource>& source() const noexcept { return source_; }

    bool operator==(const ObligationStatus&) const = default;

private:
    ObligationStatus(Kind k, std::optional<ObligationSource> s) : kind_(k), source_(std::move(s)) {}

    Kind kind_;
    std::optional<ObligationSource> source_;
};

std::string_view to_string(ObligationStatus::Kind k) noexcept;

/// Latest obligation for (peer, verb) strictly before `at` in the merged comm
/// log. Competing polarities at the latest clock resolve to Forbid; no
/// matching obligation yields Unspecified.
ObligationStatus effective_status(const Log& comm_log, const PeerId& peer, Verb verb, Clock at);

}  // namespace logtrust
