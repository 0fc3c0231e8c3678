#pragma once

// Least-significant-digit-first base-p words over k tracks and the direct
// arithmetic they encode. This is the ground truth the automata are tested on.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace buchi {

using Digit = std::uint32_t;
using Natural = std::uint64_t;

class DigitWord {
public:
    DigitWord(unsigned base, unsigned tracks);

    /// Each inner vector is one letter with exactly `tracks` digits.
    static DigitWord from_letters(unsigned base, unsigned tracks, const std::vector<std::vector<Digit>>& letters);

    unsigned base() const { return base_; }
    unsigned tracks() const { return tracks_; }
    std::size_t length() const { return tracks_ == 0 ? length0_ : digits_.size() / tracks_; }
    bool empty() const { return length() == 0; }

    Digit digit(std::size_t pos, unsigned track) const { return digits_[pos * tracks_ + track]; }
    std::span<const Digit> letter(std::size_t pos) const {
        return {digits_.data() + pos * tracks_, tracks_};
    }

    void push_letter(std::span<const Digit> letter);
    void push_zero_letter();

    /// Copy without trailing all-zero letters.
    DigitWord stripped() const;

    friend bool operator==(const DigitWord& a, const DigitWord& b);

private:
    unsigned base_;
    unsigned tracks_;
    std::size_t length0_ = 0;   // letter count when tracks_ == 0
    std::vector<Digit> digits_;
};

/// (n)_p: LSB-first expansion, empty for 0.
DigitWord digits(Natural n, unsigned p);

/// [w]_p per track. Throws std::overflow_error if a track exceeds 64 bits.
std::vector<Natural> value(const DigitWord& w);

/// Tracks hold (n_i)_p zero-padded to a common length.
DigitWord zip_pad(std::span<const Natural> ns, unsigned p);
DigitWord zip_pad(std::initializer_list<Natural> ns, unsigned p);

/// Largest power of p dividing n; V_p(0) = 0.
Natural v_p(Natural n, unsigned p);

/// "(1,2,3)(2,3,1)" letter notation, "Λ" for the empty word.
std::string to_string(const DigitWord& w);

}  // namespace buchi
