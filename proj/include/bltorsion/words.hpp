#ifndef BLTORSION_WORDS_HPP
#define BLTORSION_WORDS_HPP

#include <string>
#include <vector>

namespace bltorsion
{

/// One letter of a word in a free group: generator index and exponent +-1.
struct Letter
{
    int generator = 0;
    int exponent = 1;
    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Parses whitespace-separated tokens. A token equal to a generator name is
/// that generator; the same token with swapped letter case is its inverse
/// ("a b A B" is the commutator of a and b).
Word parse_word(const std::string& text, const std::vector<std::string>& generators);

std::string format_word(const Word& w, const std::vector<std::string>& generators);

/// Cancels adjacent inverse pairs.
Word free_reduce(const Word& w);

Word inverse(const Word& w);

/// Sum of exponents of all letters.
int exponent_sum(const Word& w);

} // namespace bltorsion

#endif // BLTORSION_WORDS_HPP
