#include <logtrust/trust.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace logtrust {

namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double parse_number(std::string_view text) {
    double out = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        throw Error(ErrorCode::invalid_argument, "bad trust model parameter '" + std::string(text) + "'");
    }
    return out;
}

}  // namespace

MultiplicativeTrust::MultiplicativeTrust(double factor) : factor_(factor) {
    if (!(factor >= 0.0 && factor < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "multiplicative factor must lie in [0, 1)");
    }
}

double MultiplicativeTrust::on_violation(double current) const noexcept {
    return std::clamp(current * factor_, 0.0, max_value());
}

std::string MultiplicativeTrust::spec() const {
    return "multiplicative:" + format_number(factor_);
}

FixedStepTrust::FixedStepTrust(double delta) : delta_(delta) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "fixed step delta must lie in (0, 1]");
    }
}

double FixedStepTrust::on_violation(double current) const noexcept {
    return std::clamp(current - delta_, floor_, max_value());
}

std::string FixedStepTrust::spec() const {
    return "fixed:" + format_number(delta_);
}

std::unique_ptr<TrustModel> parse_trust_model(std::string_view spec) {
    const auto colon = spec.find(':');
    const auto name = spec.substr(0, colon);
    const auto param = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (name == "multiplicative") {
        return std::make_unique<MultiplicativeTrust>(param.empty() ? 0.5 : parse_number(param));
    }
    if (name == "fixed") {
        return std::make_unique<FixedStepTrust>(param.empty() ? 0.2 : parse_number(param));
    }
    throw Error(ErrorCode::invalid_argument, "unknown trust model '" + std::string(spec) + "'");
}

std::unique_ptr<TrustModel> default_trust_model() {
    return std::make_unique<MultiplicativeTrust>(0.5);
}

TrustTable apply_violations(TrustTable table, std::span<const Violation> violations,
                            const TrustModel& model) {
    for (auto& [peer, value] : table) {
        value = std::clamp(value, 0.0, model.max_value());
    }
    for (const auto& v : violations) {
        auto [it, fresh] = table.try_emplace(v.offender, model.max_value());
        it->second = model.on_violation(it->second);
    }
    return table;
}

}  // namespace logtrust
