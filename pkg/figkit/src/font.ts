// Bitmap font table: 8x11 glyph rows for ASCII 32..126, one
// number per row, bit k = pixel column k.
export const GLYPH_WIDTH = 7;
export const GLYPH_HEIGHT = 11;
export const GLYPHS: Record<number, number[]> = {
  32: [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
  33: [0, 2, 2, 2, 2, 2, 0, 0, 2, 0, 0],
  34: [0, 6, 6, 6, 0, 0, 0, 0, 0, 0, 0],
  35: [0, 20, 12, 12, 30, 10, 30, 10, 6, 0, 0],
  36: [8, 28, 42, 42, 14, 24, 40, 42, 28, 8, 0],
  37: [0, 78, 42, 42, 30, 240, 168, 164, 228, 0, 0],
  38: [0, 28, 2, 34, 124, 34, 34, 34, 60, 0, 0],
  39: [0, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0],
  40: [0, 4, 2, 2, 2, 2, 2, 2, 4, 4, 0],
  41: [0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0],
  42: [0, 0, 0, 0, 8, 42, 28, 20, 0, 0, 0],
  43: [0, 0, 0, 8, 8, 62, 8, 8, 0, 0, 0],
  44: [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
  45: [0, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0],
  46: [0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0],
  47: [0, 2, 2, 1, 1, 1, 0, 0, 0, 0, 0],
  48: [0, 28, 54, 34, 34, 34, 34, 54, 28, 0, 0],
  49: [0, 12, 10, 8, 8, 8, 8, 8, 8, 0, 0],
  50: [0, 12, 18, 16, 16, 8, 4, 2, 31, 0, 0],
  51: [0, 14, 17, 16, 12, 16, 17, 17, 14, 0, 0],
  52: [0, 16, 24, 20, 20, 18, 63, 16, 16, 0, 0],
  53: [0, 30, 1, 1, 13, 19, 16, 17, 14, 0, 0],
  54: [0, 28, 36, 34, 30, 34, 34, 34, 28, 0, 0],
  55: [0, 31, 16, 8, 8, 4, 4, 2, 2, 0, 0],
  56: [0, 28, 34, 34, 28, 34, 34, 34, 28, 0, 0],
  57: [0, 28, 34, 34, 34, 60, 34, 18, 28, 0, 0],
  58: [0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0],
  59: [0, 0, 0, 2, 0, 0, 0, 0, 2, 1, 0],
  60: [0, 0, 0, 0, 24, 6, 2, 12, 16, 0, 0],
  61: [0, 0, 0, 0, 30, 0, 30, 0, 0, 0, 0],
  62: [0, 0, 0, 0, 6, 24, 16, 12, 2, 0, 0],
  63: [0, 12, 18, 18, 16, 8, 8, 0, 8, 0, 0],
  64: [0, 112, 140, 116, 74, 74, 42, 218, 4, 120, 0],
  65: [0, 8, 12, 20, 18, 30, 34, 34, 33, 0, 0],
  66: [0, 30, 34, 34, 18, 62, 34, 34, 30, 0, 0],
  67: [0, 56, 68, 66, 2, 2, 66, 68, 60, 0, 0],
  68: [0, 30, 34, 66, 66, 66, 66, 34, 30, 0, 0],
  69: [0, 62, 2, 2, 2, 30, 2, 2, 62, 0, 0],
  70: [0, 62, 2, 2, 2, 30, 2, 2, 2, 0, 0],
  71: [0, 56, 100, 66, 2, 114, 66, 100, 92, 0, 0],
  72: [0, 66, 66, 66, 66, 126, 66, 66, 66, 0, 0],
  73: [0, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0],
  74: [0, 16, 16, 16, 16, 16, 18, 18, 12, 0, 0],
  75: [0, 34, 18, 10, 10, 14, 10, 18, 34, 0, 0],
  76: [0, 2, 2, 2, 2, 2, 2, 2, 62, 0, 0],
  77: [0, 198, 198, 198, 170, 170, 170, 154, 146, 0, 0],
  78: [0, 38, 38, 38, 42, 42, 42, 50, 50, 0, 0],
  79: [0, 56, 68, 130, 130, 130, 130, 68, 56, 0, 0],
  80: [0, 30, 34, 34, 34, 30, 2, 2, 2, 0, 0],
  81: [0, 56, 68, 130, 130, 130, 130, 68, 248, 0, 0],
  82: [0, 30, 34, 34, 34, 30, 50, 34, 34, 0, 0],
  83: [0, 28, 34, 2, 4, 56, 32, 34, 28, 0, 0],
  84: [0, 62, 8, 8, 8, 8, 8, 8, 8, 0, 0],
  85: [0, 34, 34, 34, 34, 34, 34, 34, 28, 0, 0],
  86: [0, 33, 34, 34, 18, 20, 20, 12, 8, 0, 0],
  87: [0, 49, 50, 50, 42, 170, 202, 204, 196, 0, 0],
  88: [0, 34, 18, 20, 12, 12, 20, 18, 34, 0, 0],
  89: [0, 34, 34, 20, 20, 8, 8, 8, 8, 0, 0],
  90: [0, 62, 32, 16, 8, 8, 4, 2, 62, 0, 0],
  91: [6, 2, 2, 2, 2, 2, 2, 2, 2, 6, 0],
  92: [0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 0],
  93: [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0],
  94: [0, 0, 0, 12, 10, 10, 18, 0, 0, 0, 0],
  95: [0, 0, 0, 0, 0, 0, 0, 0, 0, 31, 0],
  96: [0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0],
  97: [0, 0, 0, 28, 18, 24, 22, 18, 30, 0, 0],
  98: [0, 2, 2, 30, 34, 34, 34, 34, 30, 0, 0],
  99: [0, 0, 0, 28, 34, 2, 2, 34, 28, 0, 0],
  100: [0, 32, 32, 60, 34, 34, 34, 34, 60, 0, 0],
  101: [0, 0, 0, 28, 34, 62, 2, 34, 28, 0, 0],
  102: [4, 2, 2, 7, 2, 2, 2, 2, 2, 0, 0],
  103: [0, 0, 0, 60, 34, 34, 34, 34, 60, 34, 28],
  104: [0, 2, 2, 30, 38, 34, 34, 34, 34, 0, 0],
  105: [0, 2, 0, 2, 2, 2, 2, 2, 2, 0, 0],
  106: [0, 2, 0, 2, 2, 2, 2, 2, 2, 2, 3],
  107: [0, 2, 2, 18, 10, 6, 10, 10, 18, 0, 0],
  108: [0, 2, 2, 2, 2, 2, 2, 2, 6, 0, 0],
  109: [0, 0, 0, 238, 146, 146, 146, 146, 146, 0, 0],
  110: [0, 0, 0, 30, 38, 34, 34, 34, 34, 0, 0],
  111: [0, 0, 0, 28, 34, 34, 34, 34, 28, 0, 0],
  112: [0, 0, 0, 30, 34, 34, 34, 34, 30, 2, 2],
  113: [0, 0, 0, 60, 34, 34, 34, 34, 60, 32, 32],
  114: [0, 0, 0, 14, 2, 2, 2, 2, 2, 0, 0],
  115: [0, 0, 0, 14, 18, 6, 24, 18, 30, 0, 0],
  116: [0, 2, 2, 7, 2, 2, 2, 2, 6, 0, 0],
  117: [0, 0, 0, 34, 34, 34, 34, 50, 60, 0, 0],
  118: [0, 0, 0, 17, 17, 10, 10, 10, 4, 0, 0],
  119: [0, 0, 0, 153, 89, 90, 86, 102, 36, 0, 0],
  120: [0, 0, 0, 4, 5, 2, 3, 5, 4, 0, 0],
  121: [0, 0, 0, 17, 17, 10, 10, 10, 4, 4, 2],
  122: [0, 0, 0, 30, 16, 8, 4, 2, 30, 0, 0],
  123: [6, 2, 2, 2, 2, 2, 2, 2, 2, 6, 0],
  124: [2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
  125: [3, 2, 2, 2, 2, 2, 2, 2, 2, 3, 0],
  126: [0, 0, 0, 0, 0, 22, 26, 0, 0, 0, 0],
};
