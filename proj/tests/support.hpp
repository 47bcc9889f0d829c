#pragma once

// Randomized construction programs for the adversarial property suites.
// next_step is a pure function of (seed, word): the RNG is re-derived per
// word length, so executions replay deterministically.

#include <cstdint>
#include <random>
#include <vector>

#include "ecs/model.hpp"

namespace ecs::testsupport {

inline std::mt19937_64 word_rng(std::uint64_t seed, std::size_t len) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (len + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return std::mt19937_64(z ^ (z >> 31));
}

struct Inventory {
    std::vector<int> points, lines, circles;
};

inline Inventory scan_word(const Word& w) {
    Inventory inv;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_point(w[i])) inv.points.push_back(static_cast<int>(i));
        else if (std::holds_alternative<Line>(w[i])) inv.lines.push_back(static_cast<int>(i));
        else if (std::holds_alternative<Circle>(w[i])) inv.circles.push_back(static_cast<int>(i));
    }
    return inv;
}

namespace detail {

inline StepRule random_disc_location(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    std::uniform_real_distribution<double> r(0.3, 1.2);
    Disc d{{c(rng), c(rng)}, r(rng)};
    return NewLocation{[d](const Word&) { return Location(d); }};
}

inline std::optional<StepRule> try_new_line(const Word& w, const Inventory& inv,
                                            std::mt19937_64& rng) {
    if (inv.points.size() < 2) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, inv.points.size() - 1);
    for (int attempt = 0; attempt < 10; ++attempt) {
        int i = inv.points[pick(rng)], j = inv.points[pick(rng)];
        if (i == j) continue;
        if (approx_equal(std::get<Point>(w[i]), std::get<Point>(w[j]), 1e-6)) continue;
        return StepRule(NewLine{i, j});
    }
    return std::nullopt;
}

inline std::optional<StepRule> try_line_line(const Word& w, const Inventory& inv,
                                             std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> feasible;
    for (std::size_t a = 0; a < inv.lines.size(); ++a) {
        for (std::size_t b = a + 1; b < inv.lines.size(); ++b) {
            const auto& l1 = std::get<Line>(w[inv.lines[a]]);
            const auto& l2 = std::get<Line>(w[inv.lines[b]]);
            if (std::abs(l1.a * l2.b - l2.a * l1.b) > 1e-3) {
                feasible.push_back({inv.lines[a], inv.lines[b]});
            }
        }
    }
    if (feasible.empty()) return std::nullopt;
    auto [i, j] = feasible[rng() % feasible.size()];
    return StepRule(NewIntersection{i, j, 0});
}

inline std::optional<StepRule> try_line_circle(const Word& w, const Inventory& inv,
                                               std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> feasible;
    for (int li : inv.lines) {
        for (int ci : inv.circles) {
            const auto& l = std::get<Line>(w[li]);
            const auto& k = std::get<Circle>(w[ci]);
            if (std::abs(l.eval(k.center)) < k.radius - 0.05) {
                feasible.push_back({li, ci});
            }
        }
    }
    if (feasible.empty()) return std::nullopt;
    auto [i, j] = feasible[rng() % feasible.size()];
    return StepRule(NewIntersection{i, j, static_cast<int>(rng() % 2)});
}

inline std::optional<StepRule> try_new_circle(const Word& w, const Inventory& inv,
                                              std::mt19937_64& rng) {
    if (inv.points.size() < 2) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, inv.points.size() - 1);
    for (int attempt = 0; attempt < 10; ++attempt) {
        int e = inv.points[pick(rng)];
        int f = inv.points[pick(rng)];
        int g = inv.points[pick(rng)];
        if (f == g) continue;
        if (distance(std::get<Point>(w[f]), std::get<Point>(w[g])) < 0.05) continue;
        return StepRule(NewCircle{e, f, g});
    }
    return std::nullopt;
}

inline std::optional<StepRule> try_circle_circle(const Word& w, const Inventory& inv,
                                                 std::mt19937_64& rng) {
    std::vector<std::tuple<int, int, int>> feasible; // i, j, count
    for (std::size_t a = 0; a < inv.circles.size(); ++a) {
        for (std::size_t b = a + 1; b < inv.circles.size(); ++b) {
            const auto& k1 = std::get<Circle>(w[inv.circles[a]]);
            const auto& k2 = std::get<Circle>(w[inv.circles[b]]);
            if (same_circle(k1, k2)) continue;
            double d = distance(k1.center, k2.center);
            if (d > 0.05 && d < k1.radius + k2.radius - 0.05 &&
                d > std::abs(k1.radius - k2.radius) + 0.05) {
                feasible.push_back({inv.circles[a], inv.circles[b], 2});
            }
        }
    }
    if (feasible.empty()) return std::nullopt;
    auto [i, j, count] = feasible[rng() % feasible.size()];
    return StepRule(NewIntersection{i, j, static_cast<int>(rng() % count)});
}

} // namespace detail

// Straightedge program over disc locations from root = [k]: arbitrary
// points, chords and chord intersections, plus occasional degenerate-circle
// repetitions.
inline ConstructionProgram random_straightedge_program(std::uint64_t seed, int max_letters,
                                                       Circle k) {
    ConstructionProgram p;
    p.root = {ConfigItem(k)};
    p.declared_type = ConstructionType::Straightedge;
    p.next_step = [seed, max_letters](const Word& w) -> StepRule {
        if (!w.empty() && is_location(w.back())) return ChooseStep{};
        if (static_cast<int>(w.size()) >= max_letters) return EndStep{};
        auto rng = word_rng(seed, w.size());
        Inventory inv = scan_word(w);
        for (int attempt = 0; attempt < 8; ++attempt) {
            switch (rng() % 10) {
                case 0:
                case 1:
                case 2:
                    return detail::random_disc_location(rng);
                case 3:
                case 4:
                case 5:
                    if (auto s = detail::try_new_line(w, inv, rng)) return *s;
                    break;
                case 6:
                case 7:
                    if (auto s = detail::try_line_line(w, inv, rng)) return *s;
                    break;
                case 8:
                    if (auto s = detail::try_line_circle(w, inv, rng)) return *s;
                    break;
                case 9:
                    if (!inv.points.empty()) {
                        int i = inv.points[rng() % inv.points.size()];
                        return NewCircle{i, i, i}; // degenerate repetition
                    }
                    break;
            }
        }
        return detail::random_disc_location(rng);
    };
    return p;
}

// General program from the empty root: circles and all intersection kinds.
inline ConstructionProgram random_general_program(std::uint64_t seed, int max_letters) {
    ConstructionProgram p;
    p.declared_type = ConstructionType::General;
    p.next_step = [seed, max_letters](const Word& w) -> StepRule {
        if (!w.empty() && is_location(w.back())) return ChooseStep{};
        if (static_cast<int>(w.size()) >= max_letters) return EndStep{};
        auto rng = word_rng(seed, w.size());
        Inventory inv = scan_word(w);
        for (int attempt = 0; attempt < 8; ++attempt) {
            switch (rng() % 12) {
                case 0:
                case 1:
                case 2:
                    return detail::random_disc_location(rng);
                case 3:
                case 4:
                    if (auto s = detail::try_new_line(w, inv, rng)) return *s;
                    break;
                case 5:
                case 6:
                    if (auto s = detail::try_new_circle(w, inv, rng)) return *s;
                    break;
                case 7:
                case 8:
                    if (auto s = detail::try_line_line(w, inv, rng)) return *s;
                    break;
                case 9:
                    if (auto s = detail::try_line_circle(w, inv, rng)) return *s;
                    break;
                case 10:
                case 11:
                    if (auto s = detail::try_circle_circle(w, inv, rng)) return *s;
                    break;
            }
        }
        return detail::random_disc_location(rng);
    };
    return p;
}

} // namespace ecs::testsupport
