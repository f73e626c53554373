#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "dejean/support.hpp"

namespace dejean {

// Letters are raw byte values 0..k-1; the text form maps 0..9 to 'a'..'j'.
using Word = std::string;
using Letter = unsigned char;

std::string word_text(const Word& w);
Word word_from_text(const std::string& s, int k);

// Smallest p >= 1 with w[i] = w[i+p] wherever both sides exist.
std::size_t minimal_period(const Word& w);

// |w| / minimal_period(w), exact.
Rational word_exponent(const Word& w);

// A length/period pair is past the admissible exponent iff
// len * (k-1) > period * k; all comparisons stay in integers.
bool is_prohibited(std::size_t len, std::size_t period, int k);

// Shortest prohibited length for the given period: floor(k*p/(k-1)) + 1.
std::size_t minimal_prohibited_window(std::size_t period, int k);

// No factor of w is prohibited. For each candidate period p this scans the
// longest run of positions with w[i] = w[i+p]; a run of length r gives a
// factor of length r+p and period dividing p, prohibited iff r*(k-1) > p.
bool is_dejean(const Word& w, int k);

// Given w admissible, decides admissibility of w+c / c+w by checking only the
// windows that end at / start at the new letter.
bool extension_safe(const Word& w, Letter c, int k);
bool prepend_safe(Letter c, const Word& w, int k);

// Equal letters at distance < k-1 never occur in admissible words; checked
// directly here.
bool is_rarefied(const Word& w, int k);

// Trimmed form: the last k-1 letters are exactly 0,1,...,k-2 in that order.
bool is_trimmed(const Word& w, int k);

// The unique letter permutation sigma sending the last k-1 letters of w
// (required distinct) to 0..k-2 in position order, the leftover letter to
// k-1. Returns (sigma applied to w, sigma); the image is trimmed, the map is
// constant on letter-permutation orbits, and trimmed words are fixed points.
std::pair<Word, Perm> trim_canonicalize(const Word& w, int k);

Word apply_perm(const Perm& g, const Word& w);

}  // namespace dejean
