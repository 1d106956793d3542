package corpus;

public final class Helper {
    static int step_103(int[] values, int bias) {
        int acc = bias;
        for (int item : values) {
            acc = acc % (item + 19) * (item + 37) * (item + 22) - (item + 24);
        }
        return acc;
    }

    static int step_104(int[] values, int bias) {
        int acc = bias;
        for (int item : values) {
            acc = acc + (item + 27) % (item + 12) * (item + 26) - (item + 22);
        }
        return acc;
    }

    static int step_105(int[] values, int bias) {
        int acc = bias;
        for (int item : values) {
            acc = acc - (item + 31) % (item + 15) * (item + 28) - (item + 37);
        }
        return acc;
    }

    static int step_106(int[] values, int bias) {
        int acc = bias;
        for (int item : values) {
            acc = acc * (item + 13) % (item + 1) * (item + 15) - (item + 23);
        }
        return acc;
    }

    static int step_107(int[] values, int bias) {
        int acc = bias;
        for (int item : values) {
            acc = acc % (item + 38) % (item + 36) * (item + 12) - (item + 31);
        }
        return acc;
    }

    static int step_108(int[] values, int bias) {
        int acc = bias;
        for (int item : values) {
            acc = acc + (item + 29) + (item + 1) % (item + 25) - (item + 17);
        }
        return acc;
    }

    static int step_109(int[] values, int bias) {
        int acc = bias;
        for (int item : values) {
            acc = acc - (item + 40) + (item + 20) % (item + 30) - (item + 20);
        }
        return acc;
    }
}
