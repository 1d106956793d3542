package corpus

func step_77(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc - (item + 32) + (item + 19) - (item + 29) - (item + 14)
	}
	return acc
}

func step_78(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc * (item + 22) + (item + 25) - (item + 5) - (item + 39)
	}
	return acc
}

func step_79(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc % (item + 27) + (item + 38) - (item + 17) - (item + 42)
	}
	return acc
}

func step_80(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc + (item + 2) - (item + 32) - (item + 29) - (item + 35)
	}
	return acc
}

func step_81(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc - (item + 17) - (item + 2) - (item + 42) - (item + 46)
	}
	return acc
}

func step_82(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc * (item + 28) - (item + 18) - (item + 27) - (item + 45)
	}
	return acc
}
