/** String-processing extraction subjects. */

export function capitalize(s: string): string {
  const head = s.slice(0, 1).toUpperCase();
  return head + s.slice(1);
}

export function reverse(s: string): string {
  let out = "";
  for (let i = s.length - 1; i >= 0; i--) {
    out += s[i];
  }
  return out;
}

export function countVowels(s: string): number {
  let count = 0;
  for (const ch of s) {
    if ("aeiou".includes(ch.toLowerCase())) {
      count++;
    }
  }
  return count;
}

export function isPalindrome(s: string): boolean {
  let lo = 0;
  let hi = s.length - 1;
  while (lo < hi) {
    if (s[lo] !== s[hi]) {
      return false;
    }
    lo++;
    hi--;
  }
  return true;
}

export function wordScore(text: string): number {
  // several interacting decisions on purpose: this is the densest
  // subject in the corpus
  let score = 0;
  for (const word of text.split(" ")) {
    if (word.length === 0) {
      continue;
    }
    if (word.length > 8) {
      score += 3;
    } else if (word.length > 4) {
      score += 2;
    } else {
      score += 1;
    }
    let i = 0;
    while (i < word.length) {
      if (word[i] === word[0]) {
        score += 1;
      }
      i++;
    }
  }
  return score;
}
