#ifndef CESREDUCE_QUANTA_HPP
#define CESREDUCE_QUANTA_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ces.hpp"

namespace cesreduce {

/// One quantum of information: criteria group `important` (A) is preferred
/// to group `less_important` (B) at trade-off weights w. Criterion indices
/// are 1-based.
struct Quantum {
    std::set<int> important;
    std::set<int> less_important;
    std::map<int, double> weights;
    std::optional<double> confidence;

    void validate(int m) const
    {
        if (important.empty() || less_important.empty())
            throw std::invalid_argument("quantum groups must be nonempty");
        for (int i : important)
            if (less_important.count(i))
                throw std::invalid_argument("quantum groups must be disjoint");
        auto check_index = [&](int i) {
            if (i < 1 || i > m)
                throw std::out_of_range("criterion index " + std::to_string(i) + " outside 1.." +
                                        std::to_string(m));
            auto it = weights.find(i);
            if (it == weights.end() || !(it->second > 0.0))
                throw std::invalid_argument("weight w" + std::to_string(i) + " must be positive");
        };
        for (int i : important) check_index(i);
        for (int j : less_important) check_index(j);
        if (confidence && !(*confidence >= 0.0 && *confidence <= 1.0))
            throw std::invalid_argument("confidence must lie in [0, 1]");
    }
};

/// y' with +w_i on A, -w_j on B, zero elsewhere.
inline std::vector<double> quantum_vector(const Quantum& q, int m)
{
    q.validate(m);
    std::vector<double> y(static_cast<std::size_t>(m), 0.0);
    for (int i : q.important) y[i - 1] = q.weights.at(i);
    for (int j : q.less_important) y[j - 1] = -q.weights.at(j);
    return y;
}

/// Weight triple (w1, w2, w3) plus optional confidence, as the two quanta
/// of the economic problem are entered.
struct WeightTriple {
    double w1 = 1.0;
    double w2 = 1.0;
    double w3 = 1.0;
    std::optional<double> mu;

    bool operator==(const WeightTriple&) const = default;
};

/// (P1): {f1, f2} over {f3}; (P2): {f3} over {f1, f2}.
class PreferencePair {
public:
    PreferencePair(WeightTriple first, WeightTriple second) : p1_(first), p2_(second)
    {
        as_quantum(1).validate(3);
        as_quantum(2).validate(3);
    }

    const WeightTriple& first() const { return p1_; }
    const WeightTriple& second() const { return p2_; }

    Quantum as_quantum(int which) const
    {
        const WeightTriple& w = which == 1 ? p1_ : p2_;
        Quantum q;
        if (which == 1) {
            q.important = {1, 2};
            q.less_important = {3};
        } else {
            q.important = {3};
            q.less_important = {1, 2};
        }
        q.weights = {{1, w.w1}, {2, w.w2}, {3, w.w3}};
        q.confidence = w.mu;
        return q;
    }

private:
    WeightTriple p1_;
    WeightTriple p2_;
};

enum class Consistency { BothHold, FirstOnly, SecondOnly, Inconsistent };

inline const char* to_string(Consistency c)
{
    switch (c) {
    case Consistency::BothHold: return "bothHold";
    case Consistency::FirstOnly: return "firstOnly";
    case Consistency::SecondOnly: return "secondOnly";
    case Consistency::Inconsistent: return "inconsistent";
    }
    return "?";
}

inline constexpr const char* kConsistencyFirst = "w1(1)/w3(1) > w1(2)/w3(2)";
inline constexpr const char* kConsistencySecond = "w2(1)/w3(1) > w2(2)/w3(2)";

inline Consistency check_consistency(const PreferencePair& pair)
{
    const auto& u = pair.first();
    const auto& v = pair.second();
    const bool first = u.w1 / u.w3 > v.w1 / v.w3;
    const bool second = u.w2 / u.w3 > v.w2 / v.w3;
    if (first && second) return Consistency::BothHold;
    if (first) return Consistency::FirstOnly;
    if (second) return Consistency::SecondOnly;
    return Consistency::Inconsistent;
}

/// Names of the violated consistency inequalities (empty iff bothHold).
inline std::vector<std::string> consistency_violations(const PreferencePair& pair)
{
    std::vector<std::string> out;
    const auto c = check_consistency(pair);
    if (c == Consistency::SecondOnly || c == Consistency::Inconsistent) out.emplace_back(kConsistencyFirst);
    if (c == Consistency::FirstOnly || c == Consistency::Inconsistent) out.emplace_back(kConsistencySecond);
    return out;
}

/// The gain in each quantum must exceed its loss.
inline std::vector<std::string> check_natural_compromise(const PreferencePair& pair)
{
    std::vector<std::string> out;
    const auto& u = pair.first();
    const auto& v = pair.second();
    if (!(u.w1 > u.w3)) out.emplace_back("w1(1) > w3(1)");
    if (!(u.w2 > u.w3)) out.emplace_back("w2(1) > w3(1)");
    if (!(v.w3 > v.w1)) out.emplace_back("w3(2) > w1(2)");
    if (!(v.w3 > v.w2)) out.emplace_back("w3(2) > w2(2)");
    return out;
}

enum class CriteriaKind { F3, G4, FBAR4, FHAT3 };

inline const char* to_string(CriteriaKind k)
{
    switch (k) {
    case CriteriaKind::F3: return "F3";
    case CriteriaKind::G4: return "G4";
    case CriteriaKind::FBAR4: return "FBAR4";
    case CriteriaKind::FHAT3: return "FHAT3";
    }
    return "?";
}

inline CriteriaKind parse_criteria_kind(const std::string& s)
{
    if (s == "F3") return CriteriaKind::F3;
    if (s == "G4") return CriteriaKind::G4;
    if (s == "FBAR4") return CriteriaKind::FBAR4;
    if (s == "FHAT3") return CriteriaKind::FHAT3;
    throw std::invalid_argument("unknown criteria kind '" + s + "'");
}

inline std::size_t component_count(CriteriaKind k)
{
    return (k == CriteriaKind::G4 || k == CriteriaKind::FBAR4) ? 4 : 3;
}

enum class Resource { None, Capital, Labor };

/// One derived component: sign * c_R * p_R * R + c_Q * f3, where f3 = pQ Q.
/// A pure resource criterion (f1 or f2) has c_Q = 0; f3 itself has
/// resource None.
struct DerivedComponent {
    std::string name;
    double revenue_coeff = 0.0;
    double resource_coeff = 0.0;
    Resource resource = Resource::None;
};

/// Linear recombination of (f1, f2, f3) into one of the kinds above.
class DerivedCriteria {
public:
    DerivedCriteria(CriteriaKind kind, std::vector<DerivedComponent> components, EconomicProblem problem)
        : kind_(kind), components_(std::move(components)), problem_(problem)
    {
        if (components_.size() != component_count(kind_))
            throw std::logic_error("component count does not match criteria kind");
    }

    CriteriaKind kind() const { return kind_; }
    const std::vector<DerivedComponent>& components() const { return components_; }
    const EconomicProblem& problem() const { return problem_; }

    std::vector<double> evaluate_from(const CriteriaVector& f) const
    {
        std::vector<double> out;
        out.reserve(components_.size());
        for (const auto& c : components_) {
            double v = c.revenue_coeff * f.f3;
            if (c.resource == Resource::Capital) v += c.resource_coeff * f.f1;
            if (c.resource == Resource::Labor) v += c.resource_coeff * f.f2;
            out.push_back(v);
        }
        return out;
    }

    std::vector<double> operator()(const ResourceBundle& x) const
    {
        return evaluate_from(criteria(problem_, x));
    }

private:
    CriteriaKind kind_;
    std::vector<DerivedComponent> components_;
    EconomicProblem problem_;
};

namespace detail {

inline DerivedComponent revenue_mix(std::string name, double wq, double wr, Resource res)
{
    return {std::move(name), wq, wr, res};
}

} // namespace detail

/// (f1, f2, f3) as a DerivedCriteria so every kind shares one evaluator.
inline DerivedCriteria build_f(const EconomicProblem& problem)
{
    return DerivedCriteria(CriteriaKind::F3,
                           {{"f1", 0.0, 1.0, Resource::Capital},
                            {"f2", 0.0, 1.0, Resource::Labor},
                            {"f3", 1.0, 0.0, Resource::None}},
                           problem);
}

/// g13 = w1(1) f3 + w3(1) f1, g23 = w2(1) f3 + w3(1) f2,
/// g31 = w1(2) f3 + w3(2) f1, g32 = w2(2) f3 + w3(2) f2.
inline DerivedCriteria build_g(const PreferencePair& pair, const EconomicProblem& problem)
{
    if (check_consistency(pair) != Consistency::BothHold)
        throw std::invalid_argument("g criteria require both consistency inequalities to hold");
    const auto& u = pair.first();
    const auto& v = pair.second();
    using detail::revenue_mix;
    return DerivedCriteria(CriteriaKind::G4,
                           {revenue_mix("g13", u.w1, u.w3, Resource::Capital),
                            revenue_mix("g23", u.w2, u.w3, Resource::Labor),
                            revenue_mix("g31", v.w1, v.w3, Resource::Capital),
                            revenue_mix("g32", v.w2, v.w3, Resource::Labor)},
                           problem);
}

/// (f1, f2, g13, g23).
inline DerivedCriteria build_fbar(const PreferencePair& pair, const EconomicProblem& problem)
{
    const auto& u = pair.first();
    using detail::revenue_mix;
    return DerivedCriteria(CriteriaKind::FBAR4,
                           {{"f1", 0.0, 1.0, Resource::Capital},
                            {"f2", 0.0, 1.0, Resource::Labor},
                            revenue_mix("g13", u.w1, u.w3, Resource::Capital),
                            revenue_mix("g23", u.w2, u.w3, Resource::Labor)},
                           problem);
}

/// (g31, g32, f3).
inline DerivedCriteria build_fhat(const PreferencePair& pair, const EconomicProblem& problem)
{
    const auto& v = pair.second();
    using detail::revenue_mix;
    return DerivedCriteria(CriteriaKind::FHAT3,
                           {revenue_mix("g31", v.w1, v.w3, Resource::Capital),
                            revenue_mix("g32", v.w2, v.w3, Resource::Labor),
                            {"f3", 1.0, 0.0, Resource::None}},
                           problem);
}

inline DerivedCriteria build_criteria(CriteriaKind kind, const PreferencePair& pair,
                                      const EconomicProblem& problem)
{
    switch (kind) {
    case CriteriaKind::F3: return build_f(problem);
    case CriteriaKind::G4: return build_g(pair, problem);
    case CriteriaKind::FBAR4: return build_fbar(pair, problem);
    case CriteriaKind::FHAT3: return build_fhat(pair, problem);
    }
    throw std::logic_error("unreachable criteria kind");
}

} // namespace cesreduce

#endif // CESREDUCE_QUANTA_HPP
