#include "bltorsion/words.hpp"

#include <cctype>
#include <sstream>

#include "bltorsion/errors.hpp"

namespace bltorsion
{

namespace
{

std::string swap_case(const std::string& s)
{
    std::string out = s;
    for (char& ch : out)
    {
        const unsigned char u = static_cast<unsigned char>(ch);
        ch = std::isupper(u) ? static_cast<char>(std::tolower(u)) : static_cast<char>(std::toupper(u));
    }
    return out;
}

} // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& generators)
{
    Word w;
    std::istringstream in(text);
    std::string token;
    while (in >> token)
    {
        bool found = false;
        for (std::size_t g = 0; g < generators.size() && !found; ++g)
        {
            if (token == generators[g])
            {
                w.push_back({static_cast<int>(g), 1});
                found = true;
            }
            else if (token == swap_case(generators[g]) && token != generators[g])
            {
                w.push_back({static_cast<int>(g), -1});
                found = true;
            }
        }
        if (!found)
            throw ShapeError("word '" + text + "': unknown generator '" + token + "'");
    }
    return w;
}

std::string format_word(const Word& w, const std::vector<std::string>& generators)
{
    std::string out;
    for (const Letter& l : w)
    {
        if (!out.empty())
            out += ' ';
        const std::string& name = generators.at(static_cast<std::size_t>(l.generator));
        out += l.exponent > 0 ? name : swap_case(name);
    }
    return out;
}

Word free_reduce(const Word& w)
{
    Word out;
    for (const Letter& l : w)
    {
        if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word inverse(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (Letter& l : out)
        l.exponent = -l.exponent;
    return out;
}

int exponent_sum(const Word& w)
{
    int s = 0;
    for (const Letter& l : w)
        s += l.exponent;
    return s;
}

} // namespace bltorsion
