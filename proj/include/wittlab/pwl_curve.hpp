#ifndef WITTLAB_PWL_CURVE_HPP
#define WITTLAB_PWL_CURVE_HPP

#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace wittlab {

// Concave nondecreasing piecewise-affine profile s |-> v(s) on [0, inf),
// realized as the lower envelope of lines with nonnegative integer slopes.
// Used both for the norm profiles v_x and (transposed) for Newton polygons.
class PwlCurve {
  public:
    struct Line {
        long long slope = 0;
        Rational intercept; // value at s = 0
    };
    struct Piece {
        Rational s_from;
        Rational value_from;
        long long slope = 0;
    };

    // Lower envelope of the given lines; at least one line required.
    static PwlCurve lower_envelope(std::vector<Line> lines) {
        if (lines.empty()) throw PrecisionExceeded("no exact lines available for the envelope");
        PwlCurve c;
        // Keep the lowest intercept per slope.
        std::vector<Line> best;
        for (const Line& l : lines) {
            bool merged = false;
            for (Line& b : best)
                if (b.slope == l.slope) {
                    if (l.intercept < b.intercept) b.intercept = l.intercept;
                    merged = true;
                    break;
                }
            if (!merged) best.push_back(l);
        }
        // Walk the envelope from s = 0 to the right. At equal value the
        // smaller slope wins from that point on.
        Rational s(0);
        const Line* cur = nullptr;
        for (const Line& l : best)
            if (!cur || l.intercept < cur->intercept ||
                (l.intercept == cur->intercept && l.slope < cur->slope))
                cur = &l;
        for (;;) {
            Rational value_at_s = cur->intercept + Rational(cur->slope) * s;
            c.pieces_.push_back({s, value_at_s, cur->slope});
            const Line* next = nullptr;
            Rational next_s;
            for (const Line& l : best) {
                if (l.slope >= cur->slope) continue;
                // crossing point: cur->intercept + cur->slope x = l.intercept + l.slope x
                Rational cross = (l.intercept - cur->intercept) /
                                 Rational(cur->slope - l.slope);
                if (cross < s || (cross == s)) continue;
                if (!next || cross < next_s ||
                    (cross == next_s && l.slope < next->slope)) {
                    next = &l;
                    next_s = cross;
                }
            }
            if (!next) break;
            s = next_s;
            cur = next;
        }
        return c;
    }

    const std::vector<Piece>& pieces() const { return pieces_; }

    Rational value_at(const Rational& s) const {
        const Piece& p = piece_at(s);
        return p.value_from + Rational(p.slope) * (s - p.s_from);
    }

    long long slope_right_at(const Rational& s) const { return piece_at(s).slope; }

    bool concave_nondecreasing() const {
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (pieces_[i].slope < 0) return false;
            if (i > 0 && pieces_[i].slope >= pieces_[i - 1].slope) return false;
        }
        return true;
    }

    friend bool operator==(const PwlCurve& a, const PwlCurve& b) {
        if (a.pieces_.size() != b.pieces_.size()) return false;
        for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
            const Piece &x = a.pieces_[i], &y = b.pieces_[i];
            if (x.s_from != y.s_from || x.value_from != y.value_from || x.slope != y.slope)
                return false;
        }
        return true;
    }
    friend bool operator!=(const PwlCurve& a, const PwlCurve& b) { return !(a == b); }

    // TSV rows: s_break <TAB> value <TAB> slope
    std::string to_tsv() const {
        std::string out;
        for (const Piece& p : pieces_)
            out += p.s_from.str() + "\t" + p.value_from.str() + "\t" +
                   std::to_string(p.slope) + "\n";
        return out;
    }

  private:
    const Piece& piece_at(const Rational& s) const {
        if (pieces_.empty() || s < pieces_.front().s_from)
            throw PrecisionExceeded("curve evaluated outside its domain");
        std::size_t i = pieces_.size();
        while (i > 0 && pieces_[i - 1].s_from > s) --i;
        return pieces_[i - 1];
    }

    std::vector<Piece> pieces_;
};

} // namespace wittlab

#endif
