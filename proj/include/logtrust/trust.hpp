/// @file trust.hpp
/// @brief Trust models and assessor-local trust tables.

#pragma once

#include <logtrust/obligation.hpp>

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace logtrust {

/// A performed action that contradicts the obligation governing it.
/// The governing obligation is always a forbid with clock < action_clock.
struct Violation {
    PeerId offender;
    Verb verb;
    Clock action_clock;
    ObligationSource governing;
    PeerId grantor;

    auto operator<=>(const Violation&) const = default;
};

/// Peer -> trust value in [0, max_value]. Absent peers sit at the model default.
using TrustTable = std::map<PeerId, double>;

/// Decrement rule applied once per detected violation.
///
/// Implementations must guarantee on_violation(v) < v for every v > 0 and
/// never return a negative value.
class TrustModel {
public:
    virtual ~TrustModel() = default;

    [[nodiscard]] virtual double max_value() const noexcept { return 1.0; }
    [[nodiscard]] virtual double on_violation(double current) const noexcept = 0;
    /// Round-trips through parse_trust_model.
    [[nodiscard]] virtual std::string spec() const = 0;
};

/// v -> v * factor, factor in [0, 1).
class MultiplicativeTrust final : public TrustModel {
public:
    explicit MultiplicativeTrust(double factor = 0.5);

    [[nodiscard]] double on_violation(double current) const noexcept override;
    [[nodiscard]] std::string spec() const override;
    [[nodiscard]] double factor() const noexcept { return factor_; }

private:
    double factor_;
};

/// v -> max(floor, v - delta), delta in (0, 1].
class FixedStepTrust final : public TrustModel {
public:
    explicit FixedStepTrust(double delta = 0.2);

    [[nodiscard]] double on_violation(double current) const noexcept override;
    [[nodiscard]] std::string spec() const override;
    [[nodiscard]] double delta() const noexcept { return delta_; }

private:
    double delta_;
    static constexpr double floor_ = 0.0;
};

/// Parses "multiplicative:<factor>" or "fixed:<delta>". A bare model name uses
/// its default parameter. Throws InvalidArgument.
std::unique_ptr<TrustModel> parse_trust_model(std::string_view spec);

/// The shipped default: multiplicative with factor 0.5.
std::unique_ptr<TrustModel> default_trust_model();

/// Applies one on_violation step per violation to its offender.
TrustTable apply_violations(TrustTable table, std::span<const Violation> violations,
                            const TrustModel& model);

}  // namespace logtrust
