#include "buchi/encoding.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace buchi {

DigitWord::DigitWord(unsigned base, unsigned tracks) : base_(base), tracks_(tracks) {
    if (base < 2) throw std::invalid_argument("base must be at least 2");
}

DigitWord DigitWord::from_letters(unsigned base, unsigned tracks, const std::vector<std::vector<Digit>>& letters) {
    DigitWord w(base, tracks);
    for (const auto& l : letters) w.push_letter(l);
    return w;
}

void DigitWord::push_letter(std::span<const Digit> letter) {
    if (letter.size() != tracks_) throw std::invalid_argument("letter has wrong number of tracks");
    for (Digit d : letter)
        if (d >= base_) throw std::invalid_argument("digit out of range for base");
    if (tracks_ == 0) ++length0_;
    digits_.insert(digits_.end(), letter.begin(), letter.end());
}

void DigitWord::push_zero_letter() {
    if (tracks_ == 0) ++length0_;
    digits_.resize(digits_.size() + tracks_, 0);
}

DigitWord DigitWord::stripped() const {
    DigitWord out = *this;
    if (tracks_ == 0) {
        out.length0_ = 0;
        return out;
    }
    while (!out.digits_.empty()) {
        bool zero = true;
        for (std::size_t i = out.digits_.size() - tracks_; i < out.digits_.size(); ++i)
            if (out.digits_[i] != 0) zero = false;
        if (!zero) break;
        out.digits_.resize(out.digits_.size() - tracks_);
    }
    return out;
}

bool operator==(const DigitWord& a, const DigitWord& b) {
    return a.base_ == b.base_ && a.tracks_ == b.tracks_ && a.length() == b.length() && a.digits_ == b.digits_;
}

DigitWord digits(Natural n, unsigned p) {
    DigitWord w(p, 1);
    while (n > 0) {
        Digit d = static_cast<Digit>(n % p);
        w.push_letter(std::span<const Digit>(&d, 1));
        n /= p;
    }
    return w;
}

std::vector<Natural> value(const DigitWord& w) {
    std::vector<Natural> out(w.tracks(), 0);
    constexpr Natural max = std::numeric_limits<Natural>::max();
    for (unsigned t = 0; t < w.tracks(); ++t) {
        Natural place = 1;
        bool place_overflow = false;
        for (std::size_t i = 0; i < w.length(); ++i) {
            Digit d = w.digit(i, t);
            if (d != 0) {
                if (place_overflow || place > (max - out[t]) / d) throw std::overflow_error("track value exceeds 64 bits");
                out[t] += d * place;
            }
            if (place > max / w.base()) place_overflow = true;
            else place *= w.base();
        }
    }
    return out;
}

DigitWord zip_pad(std::span<const Natural> ns, unsigned p) {
    std::vector<DigitWord> parts;
    std::size_t len = 0;
    for (Natural n : ns) {
        parts.push_back(digits(n, p));
        len = std::max(len, parts.back().length());
    }
    DigitWord w(p, static_cast<unsigned>(ns.size()));
    std::vector<Digit> letter(ns.size());
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t t = 0; t < ns.size(); ++t) letter[t] = i < parts[t].length() ? parts[t].digit(i, 0) : 0;
        w.push_letter(letter);
    }
    return w;
}

DigitWord zip_pad(std::initializer_list<Natural> ns, unsigned p) {
    return zip_pad(std::span<const Natural>(ns.begin(), ns.size()), p);
}

Natural v_p(Natural n, unsigned p) {
    if (p < 2) throw std::invalid_argument("base must be at least 2");
    if (n == 0) return 0;
    Natural power = 1;
    while (n % p == 0) {
        n /= p;
        power *= p;
    }
    return power;
}

std::string to_string(const DigitWord& w) {
    if (w.empty()) return "Λ";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.length(); ++i) {
        os << '(';
        for (unsigned t = 0; t < w.tracks(); ++t) os << (t ? "," : "") << w.digit(i, t);
        os << ')';
    }
    return os.str();
}

}  // namespace buchi
